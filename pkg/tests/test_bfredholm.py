import pytest
from hypothesis import given, settings, strategies as st

from opindex.bfredholm import (
    BFREDHOLM, INDETERMINATE, FdimFcodClass, bclassify, class_equivalent, dis, finite_dis,
    finite_spectral_indices, pair_class, psi, stabilization_check, stable_iteration_profile,
)
from opindex.errors import LimitExceeded
from opindex.exactcore import ExactMatrix, linear_data
from opindex.fredholm import is_fredholm
from opindex.opmodel import finite, operator, toeplitz

from helpers import rand_fredholm, rand_matrix, rand_signature, seeded
from oracles import brute_dis, brute_pair_class

J2 = ExactMatrix([[0, 1], [0, 0]])
S = operator(finite([[1]]), toeplitz({}))


@pytest.mark.parametrize("c, v", [((2, 3), -1), ((0, 0), 0), ((5, 2), 3)])
def test_psi(c, v):
    assert psi(FdimFcodClass(*c)) == v


@pytest.mark.parametrize("a, b, eq", [((2, 3), (1, 2), True), ((0, 0), (1, 0), False), ((4, 1), (3, 0), True)])
def test_class_equivalence(a, b, eq):
    assert class_equivalent(FdimFcodClass(*a), FdimFcodClass(*b)) is eq


def test_dis_examples():
    assert dis(operator(finite(J2))) == 2
    assert dis(operator(toeplitz({}))) == 1
    assert dis(operator(toeplitz({1: 1}))) == 0
    assert dis(operator(toeplitz({1: 1}, [[1]]))) is None


def test_classify_examples():
    v = bclassify(S)
    assert (v.status, v.index, v.dis) == (BFREDHOLM, 0, 1)
    v = bclassify(operator(finite(J2)))
    assert (v.status, v.index) == (BFREDHOLM, 0)
    assert pair_class(J2, 2) == FdimFcodClass(0, 0)
    assert bclassify(operator(toeplitz({1: 1, 0: -1}))).status == INDETERMINATE
    assert bclassify(operator(toeplitz({1: 1}, [[2]]))).to_json()["dis"] == "unknown"


def test_zero_symbol_with_patch_splits_off():
    # J2 on the leading corner of a zero block: J2 ⊕ 0
    v = bclassify(operator(toeplitz({}, J2)))
    assert (v.status, v.index, v.dis) == (BFREDHOLM, 0, 2)
    assert bclassify(operator(toeplitz({}, [[3]]))).dis == 1


def test_spectral_index_examples():
    i2 = ExactMatrix.identity(2)
    s = finite_spectral_indices(i2, 1)
    assert (s.ascent, s.descent, s.is_pole_of_finite_rank, s.eigen_multiplicity) == (1, 1, True, 2)
    s = finite_spectral_indices(i2, 0)
    assert (s.ascent, s.descent, s.is_pole_of_finite_rank) == (0, 0, False)
    s = finite_spectral_indices(J2, 0)
    assert (s.ascent, s.descent, s.is_pole_of_finite_rank) == (2, 2, True)


def test_stabilization_examples():
    r = stabilization_check(J2)
    assert r.passed and r.dis == 2 and set(r.psi_values) == {0}
    r = stabilization_check(ExactMatrix.identity(4))
    assert r.passed and r.dis == 0 and set(r.psi_values) == {0}
    with pytest.raises(LimitExceeded):
        stabilization_check(ExactMatrix.identity(13))


def _nilpotent_heavy(rng, n):
    # upper triangular with a sparse diagonal gives long Jordan chains
    m = rand_matrix(rng, n, sparsity=0.3, real=True)
    return ExactMatrix([[m[i, j] if j > i or (j == i and rng.random() < 0.3) else 0 for j in range(n)]
                        for i in range(n)])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_dis_and_classes_against_brute_force(seed):
    rng = seeded(seed)
    n = int(rng.integers(1, 6))
    m = _nilpotent_heavy(rng, n) if rng.random() < 0.6 else rand_matrix(rng, n, sparsity=0.5)
    assert finite_dis(m) == brute_dis(m)
    for k in range(n + 2):
        assert tuple(vars(pair_class(m, k)).values()) == brute_pair_class(m, k)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_upward_closure_and_restriction(seed):
    rng = seeded(seed)
    n = int(rng.integers(1, 7))
    m = _nilpotent_heavy(rng, n)
    d = finite_dis(m)
    prof = stable_iteration_profile(m)
    assert all(prof[k] == prof[d] for k in range(d, n + 1))
    # M restricted to R(M^d) is invertible: rank(M^{d+1}) = rank(M^d)
    assert linear_data(m ** (d + 1)).rank == linear_data(m ** d).rank


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_psi_additive_on_direct_sums(seed):
    rng = seeded(seed)
    a, b = _nilpotent_heavy(rng, int(rng.integers(1, 5))), _nilpotent_heavy(rng, int(rng.integers(1, 5)))
    na, nb = a.rows, b.rows
    s = ExactMatrix([[a[i, j] if i < na and j < na else (b[i - na, j - na] if i >= na and j >= na else 0)
                      for j in range(na + nb)] for i in range(na + nb)])
    n = max(finite_dis(a), finite_dis(b))
    assert psi(pair_class(s, n)) == psi(pair_class(a, n)) + psi(pair_class(b, n)) == 0
    assert finite_dis(s) == n


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fredholm_operators_are_b_fredholm(seed):
    rng = seeded(seed)
    a = rand_fredholm(rng, rand_signature(rng))
    v = bclassify(a)
    assert v.status == BFREDHOLM
    assert v.index == is_fredholm(a).index
    assert v.witness_n == 0 or a.finite_blocks()

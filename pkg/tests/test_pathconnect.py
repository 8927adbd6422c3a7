import time
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from opindex.bfredholm import BFREDHOLM, INDETERMINATE, bclassify
from opindex.errors import FredholmPathUnsupported, IndexMismatch, MalformedDocument, ShapeMismatch
from opindex.exactcore import LaurentPoly, vanishes_on_circle, winding
from opindex.fredholm import index
from opindex.opmodel import adjoint, finite, identity_like, operator, pad_with_identity_blocks, toeplitz
from opindex.pathconnect import (
    FREDHOLM, OperatorPath, connect_equal_index, root_radial_homotopy, tbp_demo, tbp_endpoints, uniform_grid,
    verify_path,
)

from helpers import rand_fredholm, rand_symbol, seeded

S = operator(finite([[1]]), toeplitz({}))
T = operator(finite([[1]]), toeplitz({-1: 1}))


def test_tbp_profile_and_endpoints():
    path, report = tbp_demo(10)
    assert report.indices == [0] + [1] * 10
    assert [e.status for e in report.index_profile] == [BFREDHOLM] + [FREDHOLM] * 10
    assert report.index_profile[1].t == Fraction(1, 10)
    assert path.samples[0] == S and path.samples[-1] == T
    assert tbp_endpoints() == (S, T)
    _, r1 = tbp_demo(1)
    assert r1.indices == [0, 1]


@pytest.mark.parametrize("k", [1, 2, 5, 17])
def test_tbp_any_grid(k):
    _, r = tbp_demo(k)
    assert r.indices == [0] + [1] * k and r.all_bfredholm and not r.all_fredholm


def test_power_identities():
    for n in range(1, 6):
        assert index(T ** n) == n
        assert index(adjoint(T) ** n) == -n


def test_verify_path_examples():
    ident = identity_like(T)
    r = verify_path(OperatorPath(uniform_grid(3), (ident,) * 4))
    assert r.all_fredholm and set(r.indices) == {0}
    bad = operator(finite([[1]]), toeplitz({1: 1, 0: -1}))
    r = verify_path(OperatorPath(uniform_grid(2), (ident, bad, ident)))
    assert r.index_profile[1].status == INDETERMINATE and not r.all_bfredholm


def test_path_validation():
    with pytest.raises(MalformedDocument):
        OperatorPath((Fraction(0), Fraction(1, 2)), (S, T))
    with pytest.raises(MalformedDocument):
        OperatorPath((Fraction(0), Fraction(1)), (S,))
    with pytest.raises(ShapeMismatch):
        OperatorPath((Fraction(0), Fraction(1)), (S, operator(toeplitz({0: 1}))))


def test_connect_s_to_identity():
    target = operator(finite([[1]]), toeplitz({0: 1}))
    p = connect_equal_index(S, target, 4)
    assert p.samples[0] == S and p.samples[-1] == target
    r = verify_path(p)
    assert r.all_bfredholm and set(r.indices) == {0}


def test_connect_patch_fredholm_preserving():
    tz = operator(toeplitz({1: 1}))
    patched = operator(toeplitz({1: 1}, [[3, 1], [0, 2]]))
    p = connect_equal_index(tz, patched, 4, mode="fredholm_preserving")
    r = verify_path(p)
    assert r.all_fredholm and set(r.indices) == {-1}
    assert p.samples[0] == tz and p.samples[-1] == patched


def test_winding_split_needs_b_fredholm_path():
    a = operator(toeplitz({-1: 1}), toeplitz({1: 1}))
    b = operator(toeplitz({0: 1}), toeplitz({0: 1}))
    with pytest.raises(FredholmPathUnsupported):
        connect_equal_index(a, b, 4, mode="fredholm_preserving")
    p = connect_equal_index(a, b, 4)
    r = verify_path(p)
    assert r.all_bfredholm and r.indices[0] == r.indices[-1] == 0


def test_connect_rejects_bad_inputs():
    with pytest.raises(IndexMismatch):
        connect_equal_index(S, T, 2)
    with pytest.raises(ShapeMismatch):
        connect_equal_index(S, operator(toeplitz({0: 1})), 2)
    with pytest.raises(FredholmPathUnsupported):
        connect_equal_index(S, operator(finite([[1]]), toeplitz({0: 1})), 2, mode="fredholm_preserving")
    a, b = pad_with_identity_blocks(operator(toeplitz({0: 2})), S)
    assert verify_path(connect_equal_index(a, b, 2)).all_bfredholm


def test_root_radial_examples():
    f = LaurentPoly({1: 2, 0: -1})
    assert root_radial_homotopy(f, f, 5) == [f] * 6
    chain = root_radial_homotopy(f, LaurentPoly({1: 1}), 8)
    assert len(chain) == 9 and all(winding(h) == 1 and not vanishes_on_circle(h) for h in chain)
    chain = root_radial_homotopy(LaurentPoly({1: 1, 0: -2}), LaurentPoly({0: 3}), 8)
    assert all(winding(h) == 0 for h in chain)
    with pytest.raises(FredholmPathUnsupported):
        root_radial_homotopy(LaurentPoly({1: 1}), LaurentPoly({0: 1}), 4)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_root_radial_keeps_winding(seed):
    rng = seeded(seed)
    f = rand_symbol(rng, 4)
    while True:
        g = rand_symbol(rng, 4)
        if winding(g) == winding(f):
            break
    chain = root_radial_homotopy(f, g, 6)
    assert chain[0] == f and chain[-1] == g
    assert all(winding(h) == winding(f) and not vanishes_on_circle(h) for h in chain)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_random_bfredholm_connections(seed):
    rng = seeded(seed)
    sig = (("finite", 2), ("toeplitz",))
    a = rand_fredholm(rng, sig, max_span=2)
    b = rand_fredholm(rng, sig, max_span=2)
    while index(b) != index(a):
        b = rand_fredholm(rng, sig, max_span=2)
    p = connect_equal_index(a, b, 3)
    r = verify_path(p)
    assert r.all_bfredholm and p.samples[0] == a and p.samples[-1] == b
    assert bclassify(p.samples[0]).index == bclassify(p.samples[-1]).index


def test_tbp_is_fast():
    start = time.perf_counter()
    tbp_demo(10)
    assert time.perf_counter() - start < 1.0

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from opindex.errors import MalformedDocument, ZeroSymbol
from opindex.exactcore import (
    ExactMatrix, GaussianRational, LaurentPoly, cauchy_disk_count, circle_roots_exist, format_rational,
    gq, linear_data, parse_rational, schur_cohn_count, subspace_dims, vanishes_on_circle, winding,
)
from opindex.exactcore import polynomials as P

from helpers import dense_polys, far_from_circle, gaussians, laurents, matrices, vectors
from oracles import brute_intersection_dim, numeric_disk_count, numeric_winding, sympy_rank


def poly(*cs):
    return tuple(GaussianRational.coerce(c) for c in cs)


# scalars

def test_parse_and_format_rationals():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == -4
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(5) == "5"
    for bad in ("1/0", "x", "1.5", True, None):
        with pytest.raises(MalformedDocument):
            parse_rational(bad)


@given(gaussians(), gaussians())
def test_gaussian_field_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).im == 0


@given(gaussians())
def test_gaussian_json_round_trip(a):
    assert GaussianRational.from_json(a.to_json()) == a
    assert hash(GaussianRational(a.re)) == hash(a.re)


def test_bare_string_is_real():
    assert GaussianRational.from_json("2/3") == gq(Fraction(2, 3))


# polynomial root counting

@pytest.mark.parametrize("p, count", [
    (poly(-2, 1), 0),
    (poly(1), 0),
    (P.mul(poly(-1, 2), poly(-3, 1)), 1),
])
def test_schur_cohn_examples(p, count):
    assert schur_cohn_count(p) == count
    assert numeric_disk_count(p)[0] == count


@pytest.mark.parametrize("p, on", [(poly(-1, 1), True), (poly(-2, 1), False), (poly(1, 0, 1), True)])
def test_circle_roots_examples(p, on):
    assert circle_roots_exist(p) is on


def test_degenerate_leading_coefficient():
    # |a0| = |an| without circle roots: (z - 2)(z - 1/2) = z^2 - 5/2 z + 1
    p = poly(1, Fraction(-5, 2), 1)
    assert not circle_roots_exist(p)
    assert schur_cohn_count(p) == 1
    assert cauchy_disk_count(p) == 1
    # (z - 2i)(z + i/2) has |a0| = |a2| = 1
    q = P.mul(poly(gq(0, -2), 1), poly(gq(0, Fraction(1, 2)), 1))
    assert schur_cohn_count(q) == 1


def test_circle_root_off_real_axis():
    r = gq(Fraction(3, 5), Fraction(4, 5))
    p = P.mul(poly(-r, 1), poly(-3, 1))
    assert circle_roots_exist(p)


@settings(max_examples=150, deadline=None)
@given(dense_polys(max_degree=8))
def test_schur_cohn_matches_numeric_roots(p):
    p = P.trim(tuple(p))
    assume(any(p))
    count, dist = numeric_disk_count(p)
    assume(dist > 1e-4)
    assert not circle_roots_exist(p)
    assert schur_cohn_count(p) == count


@settings(max_examples=100, deadline=None)
@given(dense_polys(max_degree=4), dense_polys(max_degree=3))
def test_circle_roots_survive_multiplication(p, q):
    p, q = P.trim(tuple(p)), P.trim(tuple(q))
    assume(any(p) and any(q))
    on = P.mul(poly(gq(Fraction(3, 5), Fraction(-4, 5)) * -1, 1), p)
    assert circle_roots_exist(on)
    if not circle_roots_exist(p) and not circle_roots_exist(q):
        assert schur_cohn_count(P.mul(p, q)) == schur_cohn_count(p) + schur_cohn_count(q)


# winding

@pytest.mark.parametrize("coeffs, w", [
    ({1: 1}, 1), ({0: 5}, 0), ({1: 2, 0: -1}, 1), ({0: 1, -1: -2}, -1),
])
def test_winding_examples(coeffs, w):
    f = LaurentPoly(coeffs)
    assert winding(f) == w
    assert numeric_winding(f) == w


def test_vanishing_and_zero_symbol():
    assert vanishes_on_circle(LaurentPoly({1: 1, 0: -1}))
    assert not vanishes_on_circle(LaurentPoly({-1: 1}))
    with pytest.raises(ZeroSymbol):
        winding(LaurentPoly())


@settings(max_examples=100, deadline=None)
@given(laurents(), laurents())
def test_winding_is_multiplicative(f, g):
    assume(not f.is_zero() and not g.is_zero())
    assume(not vanishes_on_circle(f) and not vanishes_on_circle(g))
    assert winding(f * g) == winding(f) + winding(g)


@settings(max_examples=100, deadline=None)
@given(laurents())
def test_winding_matches_argument_principle(f):
    assume(far_from_circle(f, 0.02))
    assert winding(f) == numeric_winding(f)


@given(laurents())
def test_laurent_json_round_trip(f):
    assert LaurentPoly.from_json(f.to_json()) == f


# linear algebra

def test_linear_data_examples():
    z = linear_data(ExactMatrix.zeros(2))
    assert z.rank == 0 and len(z.kernel_basis) == 2
    i3 = linear_data(ExactMatrix.identity(3))
    assert i3.rank == 3 and not i3.kernel_basis
    j = linear_data(ExactMatrix([[0, 1], [0, 0]]))
    assert j.rank == 1
    assert j.kernel_basis == [(gq(1), gq(0))]


@pytest.mark.parametrize("a, b, dims", [
    ([(1, 0)], [(0, 1)], (1, 1, 2, 0)),
    ([(1, 0)], [(1, 0)], (1, 1, 1, 1)),
    ([(1, 0, 0), (0, 1, 0)], [(0, 1, 0), (0, 0, 1)], (2, 2, 3, 1)),
])
def test_subspace_dims_examples(a, b, dims):
    assert tuple(subspace_dims(a, b)) == dims


@settings(max_examples=60, deadline=None)
@given(matrices(max_size=5))
def test_linear_data_against_sympy(m):
    d = linear_data(m)
    assert d.rank == sympy_rank(m)
    assert len(d.kernel_basis) == m.cols - d.rank
    for v in d.kernel_basis:
        mv = ExactMatrix([[x] for x in v])
        assert (m @ mv).is_zero()
    # image vectors are in the column space: appending one does not raise the rank
    for v in d.image_basis:
        aug = ExactMatrix([list(row) + [v[i]] for i, row in enumerate(m.entries)])
        assert linear_data(aug).rank == d.rank


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), vectors(n, 4, span=2, den=2), vectors(n, 4, span=2, den=2))))
def test_subspace_dims_against_brute_force(data):
    n, a, b = data
    d = subspace_dims(a, b)
    assert d.dim_intersection == d.dim_a + d.dim_b - d.dim_sum
    assert d.dim_intersection == brute_intersection_dim(a, b, n)

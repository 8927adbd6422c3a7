"""Strategies and seeded generators shared by the test modules."""
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from opindex.exactcore import ExactMatrix, GaussianRational, LaurentPoly
from opindex.family import OperatorFamily, ParamComplex, connected_components
from opindex.opmodel import BlockOperator, FiniteBlock, ToeplitzBlock, combine

from oracles import numeric_disk_count

# filled by the acceptance tests, echoed in the pytest terminal summary
ACCEPTANCE_LINES = []


# hypothesis strategies

def rationals(span=4, den=8):
    return st.builds(Fraction, st.integers(-span * den, span * den), st.integers(1, den))


def gaussians(span=4, den=8, real=False):
    if real:
        return st.builds(GaussianRational, rationals(span, den))
    return st.builds(GaussianRational, rationals(span, den), rationals(span, den))


def dense_polys(max_degree=6, **kw):
    return st.lists(gaussians(**kw), min_size=1, max_size=max_degree + 1)


def laurents(lo=-3, hi=3, **kw):
    return st.dictionaries(st.integers(lo, hi), gaussians(**kw), min_size=1, max_size=hi - lo + 1).map(LaurentPoly)


def matrices(max_size=4, square=True, **kw):
    def build(n):
        return st.lists(st.lists(gaussians(**kw), min_size=n, max_size=n), min_size=n, max_size=n).map(ExactMatrix)
    return st.integers(1, max_size).flatmap(build)


def vectors(n, count, **kw):
    return st.lists(st.tuples(*[gaussians(**kw)] * n), min_size=0, max_size=count)


def far_from_circle(f, margin=0.05):
    lo, p = f.to_polynomial()
    if all(not c for c in p):
        return False
    _, dist = numeric_disk_count(p)
    return dist > margin


# seeded numpy generators

def rand_gauss(rng, den=8, span=2, real=False):
    re = Fraction(int(rng.integers(-span * den, span * den + 1)), den)
    im = Fraction(0) if real else Fraction(int(rng.integers(-span * den, span * den + 1)), den)
    return GaussianRational(re, im)


def rand_matrix(rng, n, den=8, span=2, real=False, sparsity=0.0):
    return ExactMatrix([[GaussianRational(0) if rng.random() < sparsity else rand_gauss(rng, den, span, real)
                         for _ in range(n)] for _ in range(n)])


def rand_symbol(rng, max_span=6, margin=0.05):
    """Nonzero symbol with degree span <= max_span and every root modulus at least margin from 1."""
    while True:
        width = int(rng.integers(0, max_span + 1))
        lo = int(rng.integers(-width, 1)) if width else int(rng.integers(-2, 3))
        f = LaurentPoly({lo + k: rand_gauss(rng) for k in range(width + 1)})
        if not f.is_zero() and far_from_circle(f, margin):
            return f


def rand_patch(rng, max_size=3):
    k = int(rng.integers(1, max_size + 1))
    return rand_matrix(rng, k)


def rand_signature(rng, max_blocks=3):
    sig = []
    for _ in range(int(rng.integers(1, max_blocks + 1))):
        sig.append(("finite", int(rng.integers(1, 4))) if rng.random() < 0.4 else ("toeplitz",))
    if all(s[0] == "finite" for s in sig):
        sig.append(("toeplitz",))
    return tuple(sig)


def rand_fredholm(rng, signature, patch_prob=0.5, max_span=4):
    blocks = []
    for s in signature:
        if s[0] == "finite":
            blocks.append(FiniteBlock(rand_matrix(rng, s[1])))
        else:
            patch = rand_patch(rng) if rng.random() < patch_prob else None
            blocks.append(ToeplitzBlock(rand_symbol(rng, max_span), patch))
    return BlockOperator(tuple(blocks))


def rand_compact(rng, signature):
    """Zero symbols with random patches, arbitrary finite blocks."""
    blocks = []
    for s in signature:
        if s[0] == "finite":
            blocks.append(FiniteBlock(rand_matrix(rng, s[1])))
        else:
            blocks.append(ToeplitzBlock(LaurentPoly(), rand_patch(rng, 4)))
    return BlockOperator(tuple(blocks))


def seeded(seed):
    return np.random.default_rng(seed)


def rand_complex(rng, max_vertices=12, max_components=4):
    n = int(rng.integers(1, max_vertices + 1))
    verts = [f"v{i}" for i in range(n)]
    k = int(rng.integers(1, min(max_components, n) + 1))
    groups = [verts[i::k] for i in range(k)]
    edges = []
    for g in groups:
        for i in range(1, len(g)):
            edges.append((g[int(rng.integers(0, i))], g[i]))
    return ParamComplex(tuple(verts), tuple(edges))


def rand_fredholm_family(rng, c, sig, max_span=3):
    """One random Fredholm operator per component, moved by a compact term at each vertex."""
    ops = {}
    for g in connected_components(c):
        base = rand_fredholm(rng, sig, max_span=max_span)
        for v in g:
            ops[v] = combine(base, rand_compact(rng, sig), "add") if rng.random() < 0.5 else base
    return OperatorFamily(c, ops)

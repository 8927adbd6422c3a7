"""Acceptance criteria, one test each.

Every test emits one ``criterion N: PASS|FAIL ...`` line and asserts the
same condition.  The lines are repeated in the pytest terminal summary and
printed directly when this file is run as a script.
"""
import sys
import time
from fractions import Fraction

import numpy as np

from opindex.bfredholm import FdimFcodClass, pair_class, stabilization_check
from opindex.exactcore import ExactMatrix, winding
from opindex.family import (
    OperatorFamily, connected_components, family_index, homotopy_check, homotopy_family,
    local_constancy_check, path_complex, synthesize_family,
)
from opindex.fredholm import index, is_fredholm
from opindex.opmodel import adjoint, combine, finite, operator, scale, toeplitz
from opindex.pathconnect import tbp_demo, verify_path
from opindex.weyl import NormalDiagonalOperator, SpectralFamily, check_weyl_browder

from helpers import (
    ACCEPTANCE_LINES, rand_compact, rand_complex, rand_fredholm, rand_fredholm_family, rand_gauss,
    rand_signature, rand_symbol, seeded,
)
from oracles import brute_dis, brute_pair_class, numeric_winding

S = operator(finite([[1]]), toeplitz({}))
T = operator(finite([[1]]), toeplitz({-1: 1}))


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, detail


def test_criterion_01_tbp_profile():
    start = time.perf_counter()
    path, rep = tbp_demo(10)
    elapsed = time.perf_counter() - start
    ok = (rep.indices == [0] + [1] * 10 and path.samples[0] == S and path.samples[-1] == T and elapsed < 1.0)
    report(1, ok, f"profile {rep.indices}, endpoints exact, {elapsed * 1000:.1f} ms")


def test_criterion_02_power_identities():
    got = [(index(T ** n), index(adjoint(T) ** n)) for n in range(1, 6)]
    ok = got == [(n, -n) for n in range(1, 6)]
    report(2, ok, f"(ind T^n, ind T*^n) for n=1..5: {got}")


def test_criterion_03_scalar_family():
    c = path_complex(3)
    xs = {"x0": -1, "x1": 0, "x2": 1}
    f = OperatorFamily(c, {v: operator(finite([[x]])) for v, x in xs.items()})
    u = family_index(f)
    report(3, u.values() == (0,), f"family index {u.values()}")


def test_criterion_04_compact_perturbation():
    good = 0
    for seed in range(200):
        rng = seeded(1000 + seed)
        sig = rand_signature(rng)
        a = rand_fredholm(rng, sig)
        k = rand_compact(rng, sig)
        good += index(combine(a, k, "add")) == index(a)
    report(4, good == 200, f"{good}/200 unchanged")


def test_criterion_05_product_law():
    good = 0
    for seed in range(200):
        rng = seeded(2000 + seed)
        sig = rand_signature(rng)
        a, b = rand_fredholm(rng, sig), rand_fredholm(rng, sig)
        good += index(combine(a, b, "compose")) == index(a) + index(b)
    report(5, good == 200, f"{good}/200 satisfy ind(ab) = ind(a) + ind(b)")


def _stabilization_matrix(rng):
    n = int(rng.integers(1, 9))
    kind = rng.integers(0, 3)
    if kind == 0:
        # generic: dense random rationals
        vals = rng.integers(-4, 5, size=(n, n))
    elif kind == 1:
        # low rank
        r = int(rng.integers(0, n + 1))
        vals = rng.integers(-3, 4, size=(n, r)) @ rng.integers(-3, 4, size=(r, n)) if r else np.zeros((n, n), int)
    else:
        # strictly upper triangular plus a few diagonal entries: long nilpotent chains
        vals = np.triu(rng.integers(-3, 4, size=(n, n)), 1)
        vals += np.diag(rng.integers(-2, 3, size=n) * (rng.random(n) < 0.3))
    den = int(rng.integers(1, 5))
    return ExactMatrix([[Fraction(int(v), den) for v in row] for row in vals])


def test_criterion_06_stabilization():
    mats = [_stabilization_matrix(seeded(3000 + s)) for s in range(100)]
    start = time.perf_counter()
    reports = [stabilization_check(m) for m in mats]
    elapsed = time.perf_counter() - start
    agree = 0
    for m, r in zip(mats, reports):
        d = brute_dis(m)
        cls = brute_pair_class(m, d)
        agree += (r.passed and r.dis == d and pair_class(m, d) == FdimFcodClass(*cls)
                  and all(p == 0 for p in r.psi_values))
    ok = agree == 100 and elapsed < 10.0
    report(6, ok, f"{agree}/100 pass and match the brute-force oracle, checks took {elapsed:.2f} s")


def test_criterion_07_homotopy_invariance():
    good = 0
    for seed in range(50):
        rng = seeded(4000 + seed)
        c = rand_complex(rng, 4, 2)
        sig = rand_signature(rng, 2)
        s = rand_fredholm_family(rng, c, sig)
        ks = {v: rand_compact(rng, sig) for v in c.vertices}
        layers = [{v: combine(s[v], scale(ks[v], Fraction(j, 4)), "add") for v in c.vertices} for j in range(5)]
        t = OperatorFamily(c, layers[-1])
        r = homotopy_check(homotopy_family(s, layers), s, t)
        good += r.passed and all(u == r.table[0] for u in r.table)
    report(7, good == 50, f"{good}/50 homotopies pass with constant index vector")


def test_criterion_08_local_constancy():
    failures = 0
    trials = 0
    for seed in range(20):
        rng = seeded(5000 + seed)
        c = rand_complex(rng, 5, 2)
        f = rand_fredholm_family(rng, c, rand_signature(rng, 2))
        r = local_constancy_check(f, 50, seed=seed)
        failures += r.failures
        trials += r.trials
    report(8, failures == 0 and trials == 1000, f"{failures} failures in {trials} perturbations")


def test_criterion_09_synthesis():
    good = 0
    for seed in range(50):
        rng = seeded(6000 + seed)
        c = rand_complex(rng)
        u = {g[0]: int(rng.integers(-5, 6)) for g in connected_components(c)}
        good += family_index(synthesize_family(c, u)).entries == u
    report(9, good == 50, f"{good}/50 round trips")


def _normal_family(rng):
    pool = [rand_gauss(rng, den=2, span=1) for _ in range(5)]

    def pick():
        return pool[int(rng.integers(0, len(pool)))]

    verts = tuple(f"x{i}" for i in range(int(rng.integers(1, 5))))
    ops = {}
    for v in verts:
        exc = tuple((pick(), int(rng.integers(1, 4))) for _ in range(int(rng.integers(0, 4))))
        ops[v] = NormalDiagonalOperator(exc, frozenset(pick() for _ in range(int(rng.integers(1, 3)))))
    return SpectralFamily(verts, ops)


def test_criterion_10_normal_weyl():
    good = sum(tuple(check_weyl_browder(_normal_family(seeded(7000 + s))))[:2] == (True, True) for s in range(200))
    report(10, good == 200, f"{good}/200 families satisfy Weyl and Browder")


def test_criterion_11_winding_oracle():
    good = 0
    for seed in range(200):
        f = rand_symbol(seeded(8000 + seed), max_span=6, margin=0.01)
        good += winding(f) == numeric_winding(f)
    report(11, good == 200, f"{good}/200 agree with the argument-principle oracle")


def test_criterion_12_discontinuity():
    path, _ = tbp_demo(10)
    r = verify_path(path)
    ok = r.all_bfredholm and len(set(r.indices)) > 1 and is_fredholm(path.samples[1]).is_fredholm
    report(12, ok, f"all_bfredholm={r.all_bfredholm}, distinct indices {sorted(set(r.indices))}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

"""Sampled paths through B-Fredholm operators.

Paths are certified sample by sample: every sample's status and index are
exact, the continuum between samples is not checked.
"""
import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .bfredholm import BFREDHOLM, bclassify
from .errors import (CertificationFailed, FredholmPathUnsupported, IndexMismatch, MalformedDocument,
                     ShapeMismatch, SnapCertificationFailed)
from .exactcore import GaussianRational, LaurentPoly, winding
from .exactcore import vanishes_on_circle
from .fredholm import is_fredholm
from .opmodel import BlockOperator, FiniteBlock, ToeplitzBlock, affine, finite, operator, toeplitz

GRID = 16
LAMBDA_DEPTH = 32
SNAP_BITS = 20
SNAP_DEPTH = 4

FREDHOLM = "fredholm"


@dataclass(frozen=True)
class OperatorPath:
    grid: Tuple[Fraction, ...]
    samples: Tuple[BlockOperator, ...]

    def __post_init__(self):
        grid = tuple(Fraction(t) for t in self.grid)
        samples = tuple(self.samples)
        if len(grid) != len(samples):
            raise MalformedDocument("grid and samples differ in length", "samples")
        if len(grid) < 2 or grid[0] != 0 or grid[-1] != 1:
            raise MalformedDocument("grid must run from 0 to 1", "grid")
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise MalformedDocument("grid must be strictly increasing", "grid")
        if len({s.signature for s in samples}) != 1:
            raise ShapeMismatch("path samples must share one block signature")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True)
class ProfileEntry:
    t: Fraction
    status: str
    index: Optional[int]


@dataclass(frozen=True)
class PathReport:
    all_bfredholm: bool
    all_fredholm: bool
    index_profile: Tuple[ProfileEntry, ...]

    @property
    def indices(self):
        return [e.index for e in self.index_profile]

    def to_json(self):
        return {"all_bfredholm": self.all_bfredholm, "all_fredholm": self.all_fredholm,
                "profile": [{"t": _fmt(e.t), "status": e.status, "index": e.index}
                            for e in self.index_profile]}


def _fmt(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def classify_sample(a):
    v = is_fredholm(a)
    if v.is_fredholm:
        return FREDHOLM, v.index
    b = bclassify(a)
    return b.status, b.index


def verify_path(p):
    profile = []
    for t, s in zip(p.grid, p.samples):
        status, ind = classify_sample(s)
        profile.append(ProfileEntry(t, status, ind))
    return PathReport(all(e.status in (FREDHOLM, BFREDHOLM) for e in profile),
                      all(e.status == FREDHOLM for e in profile), tuple(profile))


def uniform_grid(k):
    return tuple(Fraction(i, k) for i in range(k + 1))


# the shift example: S = [1] ⊕ 0, T = [1] ⊕ left shift, Φ(t) = [1] ⊕ t·(left shift)

def tbp_operator(t):
    return operator(finite([[1]]), toeplitz({-1: t}))


def tbp_endpoints():
    return tbp_operator(0), tbp_operator(1)


def tbp_demo(k=10):
    if k < 1:
        raise ValueError("need at least one grid step")
    grid = uniform_grid(k)
    path = OperatorPath(grid, tuple(tbp_operator(t) for t in grid))
    return path, verify_path(path)


# symbol homotopies

def _split_roots(f):
    """(lo, constant C, inside roots, outside roots) with f = C z^lo Π(z - r_in) Π(1 - z/r_out)."""
    lo, p = f.to_polynomial()
    coeffs = np.array([complex(c) for c in p], dtype=complex)
    roots = np.roots(coeffs[::-1]) if len(coeffs) > 1 else np.array([], dtype=complex)
    inside = roots[np.abs(roots) < 1]
    outside = roots[np.abs(roots) >= 1]
    const = coeffs[-1] * np.prod(-outside) if len(outside) else coeffs[-1]
    return lo, complex(const), inside, outside


def _radial_symbol(lo, const, inside, outside, u):
    """Roots inside pulled to 0 and roots outside pushed to infinity by the factor (1 - u)."""
    poly = np.array([const], dtype=complex)
    for r in inside:
        poly = np.polymul(poly, np.array([1.0, -(1 - u) * r]))
    for r in outside:
        poly = np.polymul(poly, np.array([-(1 - u) / r, 1.0]))
    # poly is highest degree first; degree may drop when u == 1 makes leading terms vanish
    coeffs = poly[::-1]
    return lo, coeffs


def _snap(lo, coeffs, bits):
    den = 1 << bits
    out = {}
    for i, c in enumerate(coeffs):
        re = Fraction(round(c.real * den), den)
        im = Fraction(round(c.imag * den), den)
        if re or im:
            out[lo + i] = GaussianRational(re, im)
    return LaurentPoly(out)


def _certified(h, w):
    return not h.is_zero() and not vanishes_on_circle(h) and winding(h) == w


def root_radial_homotopy(f, g, k=GRID):
    """k + 1 circle-nonvanishing symbols from f to g, all with the common winding number.

    Roots of f inside the disk shrink to 0 and roots outside recede to
    infinity, leaving c_f z^w; the constant moves to c_g along a log-linear
    arc avoiding 0; then the same construction for g runs backwards.
    Intermediate symbols are rounded to dyadic Gaussian rationals and each is
    re-certified exactly.
    """
    w = winding(f)
    if winding(g) != w:
        raise FredholmPathUnsupported(f"windings differ: {w} vs {winding(g)}")
    if f == g:
        return [f] * (k + 1)
    lo_f, c_f, in_f, out_f = _split_roots(f)
    lo_g, c_g, in_g, out_g = _split_roots(g)
    log_f = cmath.log(c_f)
    log_g = cmath.log(c_g)
    d_arg = (log_g.imag - log_f.imag + np.pi) % (2 * np.pi) - np.pi
    log_g = complex(log_g.real, log_f.imag + d_arg)
    third = Fraction(1, 3)

    def sample(t):
        if t <= third:
            return _radial_symbol(lo_f, c_f, in_f, out_f, float(3 * t))
        if t <= 2 * third:
            s = float(3 * t - 1)
            return w, np.array([cmath.exp((1 - s) * log_f + s * log_g)])
        return _radial_symbol(lo_g, c_g, in_g, out_g, float(3 * (1 - t)))

    out = []
    for t in uniform_grid(k):
        if t == 0:
            out.append(f)
            continue
        if t == 1:
            out.append(g)
            continue
        lo, coeffs = sample(t)
        for attempt in range(SNAP_DEPTH + 1):
            h = _snap(lo, coeffs, SNAP_BITS + 8 * attempt)
            if _certified(h, w):
                out.append(h)
                break
        else:
            raise SnapCertificationFailed(f"could not certify a rounded symbol at t={t}", t)
    return out


# connecting operators of equal index

def _lerp_matrix(a, b, s):
    s = GaussianRational(s)
    return a.scale(1 - s) + b.scale(s)


def _scaled_patch(block, s):
    return None if block.patch is None else block.patch.scale(GaussianRational(s))


def _fade_path(a, b, k):
    """A -> B through zero symbols: patches out, symbols down to 0, symbols up, patches in."""
    steps = [Fraction(i, k) for i in range(1, k + 1)]
    out = [a]

    def build(fin, toep):
        return BlockOperator(tuple(fin(x, y) if isinstance(x, FiniteBlock) else toep(x, y)
                                   for x, y in zip(a.blocks, b.blocks)))

    for s in steps:
        out.append(build(lambda x, y: FiniteBlock(_lerp_matrix(x.matrix, y.matrix, s)),
                         lambda x, y: ToeplitzBlock(x.symbol, _scaled_patch(x, 1 - s))))
    for s in steps:
        out.append(build(lambda x, y: y, lambda x, y: ToeplitzBlock(x.symbol * GaussianRational(1 - s))))
    for s in steps:
        out.append(build(lambda x, y: y, lambda x, y: ToeplitzBlock(y.symbol * GaussianRational(s))))
    for s in steps:
        out.append(build(lambda x, y: y, lambda x, y: ToeplitzBlock(y.symbol, _scaled_patch(y, s))))
    out[-1] = b
    return out


def _fredholm_middle(a, b, k):
    """Patches out, per-block root-radial symbol homotopy, patches in."""
    steps = [Fraction(i, k) for i in range(1, k + 1)]
    chains = {}
    for i, (x, y) in enumerate(zip(a.blocks, b.blocks)):
        if isinstance(x, ToeplitzBlock):
            chains[i] = root_radial_homotopy(x.symbol, y.symbol, k)
    out = [a]
    for s in steps:
        out.append(BlockOperator(tuple(
            FiniteBlock(_lerp_matrix(x.matrix, y.matrix, s)) if isinstance(x, FiniteBlock)
            else ToeplitzBlock(x.symbol, _scaled_patch(x, 1 - s)) for x, y in zip(a.blocks, b.blocks))))
    for j in range(1, k + 1):
        out.append(BlockOperator(tuple(
            y if isinstance(y, FiniteBlock) else ToeplitzBlock(chains[i][j])
            for i, (x, y) in enumerate(zip(a.blocks, b.blocks)))))
    for s in steps:
        out.append(BlockOperator(tuple(
            y if isinstance(y, FiniteBlock) else ToeplitzBlock(y.symbol, _scaled_patch(y, s))
            for y in b.blocks)))
    out[-1] = b
    return out


def _concat(*segments):
    out = list(segments[0])
    for seg in segments[1:]:
        out.extend(seg[1:])
    return out


def _certify(samples, grid, predicate, what):
    for t, s in zip(grid, samples):
        if not predicate(s):
            raise CertificationFailed(f"sample at t={t} is not {what}", t)


def _block_windings(a):
    return [winding(b.symbol) for b in a.toeplitz_blocks()]


def connect_equal_index(s, t, k=GRID, mode="bfredholm"):
    """Sampled path from s to t, both certified B-Fredholm with equal index.

    ``bfredholm``: shift both by a small λ (halving search) so they become
    Fredholm of the common index, join each to its shift by the straight
    line s - uλI, and join the shifted operators by fading every Toeplitz
    symbol through 0.  ``fredholm_preserving``: both endpoints Fredholm with
    equal per-block windings; symbols are joined by root-radial homotopies
    and every sample is Fredholm of the common index.
    """
    if s.signature != t.signature:
        raise ShapeMismatch("operators have different block signatures; pad with identity blocks first")
    vs, vt = bclassify(s), bclassify(t)
    if vs.status != BFREDHOLM or vt.status != BFREDHOLM:
        raise CertificationFailed("both endpoints must be certified B-Fredholm")
    if vs.index != vt.index:
        raise IndexMismatch(f"indices differ: {vs.index} vs {vt.index}")
    n = vs.index

    if mode == "fredholm_preserving":
        if not is_fredholm(s) or not is_fredholm(t):
            raise FredholmPathUnsupported("an endpoint is not Fredholm, so no path of Fredholm operators reaches it")
        if _block_windings(s) != _block_windings(t):
            raise FredholmPathUnsupported(
                f"per-block windings differ ({_block_windings(s)} vs {_block_windings(t)}); winding is "
                "constant along circle-nonvanishing homotopies of each block")
        samples = _fredholm_middle(s, t, k)
        grid = uniform_grid(len(samples) - 1)
        _certify(samples, grid, lambda x: is_fredholm(x).index == n, f"Fredholm of index {n}")
        return OperatorPath(grid, tuple(samples))

    if mode != "bfredholm":
        raise ValueError(f"unknown mode {mode!r}")
    line = [Fraction(i, k) for i in range(k + 1)]
    for depth in range(1, LAMBDA_DEPTH + 1):
        lam = Fraction(1, 2 ** depth)
        a, b = affine(s, 1, lam), affine(t, 1, lam)
        va, vb = is_fredholm(a), is_fredholm(b)
        if not (va and vb and va.index == n and vb.index == n):
            continue
        seg_s = [affine(s, 1, lam * u) for u in line]
        seg_t = [affine(t, 1, lam * u) for u in reversed(line)]
        if not all(bclassify(x).status == BFREDHOLM for x in seg_s + seg_t):
            continue
        break
    else:
        raise CertificationFailed(f"no shift 1/2^j (j <= {LAMBDA_DEPTH}) makes both endpoints Fredholm of index {n}")
    samples = _concat(seg_s, _fade_path(a, b, k), seg_t)
    samples[0], samples[-1] = s, t
    grid = uniform_grid(len(samples) - 1)
    _certify(samples, grid, lambda x: bclassify(x).status == BFREDHOLM, "B-Fredholm")
    return OperatorPath(grid, tuple(samples))

"""Fredholm predicate, index, nullity/defect and perturbation margins."""
from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Optional

import numpy as np

from .errors import MarginNotFound, NotFredholm
from .exactcore import linear_data, winding, vanishes_on_circle
from .opmodel import FiniteBlock, toeplitz_section

OK = "ok"
SYMBOL_VANISHES = "symbol_vanishes_on_circle"
ZERO_SYMBOL = "zero_symbol_infinite_defect"

FS_SIZE = 256
FS_TOL = 1e-8
MARGIN_DEPTH = 20


@dataclass(frozen=True)
class FredholmVerdict:
    is_fredholm: bool
    index: Optional[int]
    reason: str

    def __post_init__(self):
        if self.is_fredholm != (self.index is not None):
            raise ValueError("index is present exactly when the operator is Fredholm")

    def __bool__(self):
        return self.is_fredholm


@dataclass(frozen=True)
class NullityDefect:
    nullity: Optional[int]
    defect: Optional[int]
    certified: bool


def block_verdict(block):
    """(reason, index contribution or None) for one block."""
    if isinstance(block, FiniteBlock):
        return OK, 0
    f = block.symbol
    if f.is_zero():
        return ZERO_SYMBOL, None
    if vanishes_on_circle(f):
        return SYMBOL_VANISHES, None
    # patches are compact and do not move the index
    return OK, -winding(f)


def is_fredholm(a):
    """Exact Fredholm verdict.

    Fredholm iff every Toeplitz symbol is nonzero and has no zero on the
    unit circle; the index is the sum of minus the symbol windings.
    """
    total = 0
    for b in a.blocks:
        reason, ind = block_verdict(b)
        if ind is None:
            return FredholmVerdict(False, None, reason)
        total += ind
    return FredholmVerdict(True, total, OK)


def index(a):
    v = is_fredholm(a)
    if not v.is_fredholm:
        raise NotFredholm(f"operator is not Fredholm ({v.reason})", v.reason)
    return v.index


def _require_fredholm(a):
    v = is_fredholm(a)
    if not v.is_fredholm:
        raise NotFredholm(f"operator is not Fredholm ({v.reason})", v.reason)
    return v


def _numerical_nullity(m, tol):
    if m.size == 0:
        return 0 if m.shape[1] == 0 else m.shape[1]
    s = np.linalg.svd(m, compute_uv=False)
    short = max(m.shape[1] - len(s), 0)
    return int(np.sum(s < tol)) + short


def _finite_section_block(block, n, tol):
    """Kernel and cokernel estimates from tall sections of the block and its adjoint.

    A vector supported on the first n coordinates is mapped into the first
    n + hi(f) (+ patch) coordinates, so the tall section sees T exactly on
    that subspace; small singular values flag approximate kernel vectors.
    """
    f = block.symbol
    extra_down = max(f.hi, 0) + block.patch_size
    extra_up = max(-f.lo, 0) + block.patch_size
    tall = toeplitz_section(block, n + extra_down, n)
    tall_adj = toeplitz_section(block, n, n + extra_up).conj().T
    return _numerical_nullity(tall, tol), _numerical_nullity(tall_adj, tol)


def nullity_defect(a, mode="exact", size=FS_SIZE, tol=FS_TOL):
    """Nullity n(T) and defect d(T).

    ``mode="exact"`` is certified when every Toeplitz block is unpatched
    (one of kernel and cokernel of such a block is trivial) and falls back
    to the finite-section estimate otherwise.  ``mode="finite_section"``
    always estimates, uncertified.
    """
    v = _require_fredholm(a)
    if mode not in ("exact", "finite_section"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exact" and all(b.patch is None for b in a.toeplitz_blocks()):
        n = d = 0
        for b in a.blocks:
            if isinstance(b, FiniteBlock):
                k = b.size - linear_data(b.matrix).rank
                n += k
                d += k
            else:
                ind = -winding(b.symbol)
                n += max(ind, 0)
                d += max(-ind, 0)
        assert n - d == v.index
        return NullityDefect(n, d, True)
    n = d = 0
    for b in a.blocks:
        if isinstance(b, FiniteBlock):
            k = b.size - linear_data(b.matrix).rank
            n += k
            d += k
        else:
            bn, bd = _finite_section_block(b, size, tol)
            n += bn
            d += bd
    return NullityDefect(n, d, False)


def _rational_floor(x, bits=40):
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _sqrt_floor(q, bits=40):
    """Largest multiple of 2^-bits not exceeding sqrt(q), exact when sqrt(q) is such a multiple."""
    num = q.numerator << (2 * bits)
    return Fraction(math.isqrt(num // q.denominator), 1 << bits)


def _sqrt_ceil(q, bits=40):
    lo = _sqrt_floor(q, bits)
    return lo if lo * lo == q else lo + Fraction(1, 1 << bits)


def _abs_bound(c, sqrt):
    if not c.im:
        return abs(c.re)
    if not c.re:
        return abs(c.im)
    return sqrt(c.abs2())


def _few_term_margin(f):
    """Closed form for at most two terms: min |a z^j + b z^k| = ||a| - |b|| on the circle."""
    terms = [c for _, c in f.items()]
    if len(terms) == 1:
        return _abs_bound(terms[0], _sqrt_floor)
    small, big = sorted(terms, key=lambda c: c.abs2())
    return _abs_bound(big, _sqrt_floor) - _abs_bound(small, _sqrt_ceil)


def symbol_margin(f, depth=MARGIN_DEPTH):
    """Certified rational lower bound on min |f| over the unit circle.

    Symbols with one or two terms use the closed form.  Otherwise the grid
    minimum of |f| over M equally spaced angles, less the Lipschitz slack
    (sum |n a_n|) * pi / M and a float-rounding allowance, is a lower bound;
    M doubles until the slack is below 1/64 of the grid minimum and the best
    positive bound found is returned.
    """
    if f.is_zero():
        raise NotFredholm("zero symbol", ZERO_SYMBOL)
    if len(f.items()) <= 2:
        m = _few_term_margin(f)
        if m > 0:
            return m
    lip = float(f.derivative_l1())
    rounding = 1e-12 * (1.0 + float(f.l1())) * (f.band + 1)
    m = max(64, 16 * f.band)
    best = None
    for _ in range(depth + 1):
        thetas = np.arange(m) * (2 * np.pi / m)
        grid_min = float(np.min(np.abs(f.on_circle(thetas))))
        bound = grid_min - lip * np.pi / m - rounding
        if bound > 0:
            best = bound
            if grid_min - bound <= grid_min / 64:
                break
        m *= 2
    if best is None:
        raise MarginNotFound(f"could not certify min |f| > 0 for {f!r} after {depth} refinements")
    return _rational_floor(best)


def fredholm_margin(a, depth=MARGIN_DEPTH):
    """Radius m such that every same-signature b with norm_bound(b - a) < m is
    Fredholm with the same index; ``None`` when there is no Toeplitz block
    (every same-signature operator is then Fredholm of index 0)."""
    _require_fredholm(a)
    margins = [symbol_margin(b.symbol, depth) for b in a.toeplitz_blocks()]
    return min(margins) if margins else None


def verdict_to_json(a, mode="exact", size=FS_SIZE, tol=FS_TOL):
    v = is_fredholm(a)
    out = {"fredholm": v.is_fredholm, "index": v.index, "reason": v.reason}
    if v.is_fredholm:
        nd = nullity_defect(a, mode, size, tol)
        out["nullity"] = {"value": nd.nullity, "certified": nd.certified}
        out["defect"] = {"value": nd.defect, "certified": nd.certified}
    return out

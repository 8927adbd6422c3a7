"""B-Fredholm classification, degree of stable iteration and the (dim, codim) class calculus.

For T and an integer n, write E_n = N(T) ∩ R(T^n) and F_n = R(T) + N(T^n).
T is B-Fredholm when some pair (E_n, F_n) has dim E_n and codim F_n finite,
and its index is dim E_n - codim F_n, independent of the admissible n.
"""
from dataclasses import dataclass
from typing import List, Optional

from .errors import LimitExceeded, DimensionMismatch
from .exactcore import ExactMatrix, image_basis, kernel_basis, linear_data, subspace_dims, winding
from .exactcore import vanishes_on_circle
from .opmodel import FiniteBlock

BFREDHOLM = "bfredholm"
NOT_BFREDHOLM = "not_bfredholm"
INDETERMINATE = "indeterminate"

STABILIZATION_MAX_SIZE = 12


@dataclass(frozen=True)
class FdimFcodClass:
    """A pair (finite-dimensional E, finite-codimensional F) kept as (dim E, codim F)."""

    dim: int
    codim: int

    def __post_init__(self):
        if self.dim < 0 or self.codim < 0:
            raise ValueError("dimensions are natural numbers")


def psi(c):
    return c.dim - c.codim


def class_equivalent(c1, c2):
    return psi(c1) == psi(c2)


@dataclass(frozen=True)
class BFredholmVerdict:
    status: str
    index: Optional[int] = None
    dis: Optional[int] = None  # None means unknown
    witness_n: Optional[int] = None

    def to_json(self):
        return {"status": self.status, "index": self.index,
                "dis": "unknown" if self.dis is None else self.dis,
                "witness_n": self.witness_n}


# finite blocks

def _square(m):
    if not m.is_square:
        raise DimensionMismatch(f"expected a square matrix, got {m.shape}")


def _powers(m, upto):
    out = [ExactMatrix.identity(m.rows)]
    for _ in range(upto):
        out.append(out[-1] @ m)
    return out


def pair_class(m, n, powers=None):
    """Class of (N(M) ∩ R(M^n), R(M) + N(M^n)) for a square matrix M."""
    _square(m)
    mn = powers[n] if powers is not None else m ** n
    ker = kernel_basis(m)
    dims = subspace_dims(ker, image_basis(mn))
    span = subspace_dims(image_basis(m), kernel_basis(mn))
    return FdimFcodClass(dims.dim_intersection, m.rows - span.dim_sum)


def stable_iteration_profile(m, powers=None):
    """dim(N(M) ∩ R(M^n)) for n = 0..size."""
    _square(m)
    powers = powers if powers is not None else _powers(m, m.rows)
    ker = kernel_basis(m)
    return [subspace_dims(ker, image_basis(powers[n])).dim_intersection for n in range(m.rows + 1)]


def finite_dis(m, powers=None):
    """Least n from which N(M) ∩ R(M^k) stops shrinking.

    The subspaces are nested and decreasing in k and settle by k = size,
    so n qualifies exactly when its dimension already equals the final one.
    """
    profile = stable_iteration_profile(m, powers)
    final = profile[-1]
    for n, d in enumerate(profile):
        if d == final:
            return n
    return m.rows


def _zero_patched_split(block):
    """A zero-symbol block with patch P equals P ⊕ 0 on l^2."""
    return block.patch


def block_dis(block):
    if isinstance(block, FiniteBlock):
        return finite_dis(block.matrix)
    if block.symbol.is_zero():
        if block.patch is None:
            return 1
        return max(finite_dis(_zero_patched_split(block)), 1)
    if block.patch is None and not vanishes_on_circle(block.symbol):
        return 0
    return None


def dis(a):
    """Degree of stable iteration; ``None`` when some block cannot be certified.

    Blocks combine by maximum because the admissible sets intersect.
    """
    out = 0
    for b in a.blocks:
        d = block_dis(b)
        if d is None:
            return None
        out = max(out, d)
    return out


def _finite_block_class(m):
    d = finite_dis(m)
    c = pair_class(m, d)
    assert psi(c) == 0, "a finite-dimensional operator has B-Fredholm index 0"
    return d, c


def block_bclassify(block):
    """(status, index contribution, dis, witness n) for one block."""
    if isinstance(block, FiniteBlock):
        d, _ = _finite_block_class(block.matrix)
        return BFREDHOLM, 0, d, d
    f = block.symbol
    if f.is_zero():
        if block.patch is None:
            return BFREDHOLM, 0, 1, 1
        d, _ = _finite_block_class(_zero_patched_split(block))
        n = max(d, 1)
        return BFREDHOLM, 0, n, n
    if vanishes_on_circle(f):
        return INDETERMINATE, None, None, None
    return BFREDHOLM, -winding(f), (0 if block.patch is None else None), 0


def bclassify(a):
    index = 0
    dis_value = 0
    witness = 0
    for b in a.blocks:
        status, ind, d, w = block_bclassify(b)
        if status != BFREDHOLM:
            return BFredholmVerdict(status)
        index += ind
        witness = max(witness, w)
        dis_value = None if (dis_value is None or d is None) else max(dis_value, d)
    return BFredholmVerdict(BFREDHOLM, index, dis_value, witness)


# spectral indices of finite blocks

@dataclass(frozen=True)
class FiniteSpectralIndices:
    ascent: int
    descent: int
    is_pole_of_finite_rank: bool
    eigen_multiplicity: int


def finite_spectral_indices(m, lam):
    """Ascent, descent, pole status and algebraic multiplicity of lam for a square M."""
    _square(m)
    a = m.shift(lam)
    size = m.rows
    powers = _powers(a, size + 1)
    ranks = [linear_data(p).rank for p in powers]
    nullities = [size - r for r in ranks]
    ascent = next(n for n in range(size + 1) if nullities[n] == nullities[n + 1])
    descent = next(n for n in range(size + 1) if ranks[n] == ranks[n + 1])
    pole = nullities[1] > 0
    if pole:
        assert ascent == descent
    return FiniteSpectralIndices(ascent, descent, pole, nullities[size])


# stabilization

@dataclass(frozen=True)
class StabilizationReport:
    passed: bool
    dis: int
    classes: List[FdimFcodClass]
    psi_values: List[int]


def stabilization_check(m):
    """Check that every pair class for n in [dis, dis + size] is equivalent to the one at dis."""
    _square(m)
    if m.rows > STABILIZATION_MAX_SIZE:
        raise LimitExceeded(f"stabilization_check is limited to size {STABILIZATION_MAX_SIZE}")
    size = m.rows
    powers = _powers(m, 2 * size)
    d = finite_dis(m, powers)
    classes = [pair_class(m, n, powers) for n in range(d, d + size + 1)]
    passed = all(class_equivalent(c, classes[0]) for c in classes)
    return StabilizationReport(passed, d, classes, [psi(c) for c in classes])

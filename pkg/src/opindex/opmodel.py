"""Block-diagonal operators on finite blocks and copies of l^2(N).

Each Toeplitz block carries a Laurent symbol f = sum a_n z^n acting by
(T_f)_{j,k} = a_{j-k}, so T_z is the right shift (index -1) and T_{1/z}
the left shift (index +1), plus an optional finite patch on the leading
k x k corner.  The class is closed under sums, products, adjoints, scalar
shifts and compact perturbation.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np
from scipy.linalg import block_diag

from .errors import LimitExceeded, MalformedDocument, ShapeMismatch
from .exactcore import ExactMatrix, GaussianRational, LaurentPoly, ZERO

MAX_PATCH = 64
MAX_BAND = 64
MAX_COMPOSE_WINDOW = 256


def _normalize_patch(patch):
    """Drop all-zero trailing rows/columns; an all-zero patch becomes None."""
    if patch is None:
        return None
    if not patch.is_square:
        raise ShapeMismatch(f"patch must be square, got {patch.shape}")
    e = patch.entries
    k = 0
    for i in range(patch.rows):
        for j in range(patch.cols):
            if e[i][j]:
                k = max(k, i + 1, j + 1)
    if k == 0:
        return None
    if k == patch.rows:
        return patch
    return ExactMatrix([row[:k] for row in e[:k]], k, k)


@dataclass(frozen=True)
class FiniteBlock:
    matrix: ExactMatrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise ShapeMismatch(f"finite block must be square, got {self.matrix.shape}")

    @property
    def size(self):
        return self.matrix.rows

    @property
    def signature(self):
        return ("finite", self.size)


@dataclass(frozen=True)
class ToeplitzBlock:
    symbol: LaurentPoly
    patch: Optional[ExactMatrix] = None

    def __post_init__(self):
        object.__setattr__(self, "patch", _normalize_patch(self.patch))

    signature = ("toeplitz",)

    @property
    def patch_size(self):
        return 0 if self.patch is None else self.patch.rows

    def entry(self, j, k):
        v = self.symbol[j - k]
        if self.patch is not None and j < self.patch.rows and k < self.patch.rows:
            v = v + self.patch[j, k]
        return v

    def section(self, rows, cols=None):
        cols = rows if cols is None else cols
        return ExactMatrix([[self.entry(j, k) for k in range(cols)] for j in range(rows)], rows, cols)


Block = Union[FiniteBlock, ToeplitzBlock]


@dataclass(frozen=True)
class BlockOperator:
    """Direct sum of blocks acting block-diagonally."""

    blocks: Tuple[Block, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise MalformedDocument("an operator needs at least one block", "blocks")
        for b in blocks:
            if not isinstance(b, (FiniteBlock, ToeplitzBlock)):
                raise TypeError(f"not a block: {b!r}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def signature(self):
        return tuple(b.signature for b in self.blocks)

    def toeplitz_blocks(self):
        return [b for b in self.blocks if isinstance(b, ToeplitzBlock)]

    def finite_blocks(self):
        return [b for b in self.blocks if isinstance(b, FiniteBlock)]

    def __add__(self, other):
        return combine(self, other, "add")

    def __sub__(self, other):
        return combine(self, scale(other, -1), "add")

    def __matmul__(self, other):
        return combine(self, other, "compose")

    def __pow__(self, n):
        if n < 1:
            return identity_like(self)
        out = self
        for _ in range(n - 1):
            out = combine(out, self, "compose")
        return out


# construction helpers

def toeplitz(symbol, patch=None):
    if not isinstance(symbol, LaurentPoly):
        symbol = LaurentPoly(symbol)
    if patch is not None and not isinstance(patch, ExactMatrix):
        patch = ExactMatrix(patch)
    return ToeplitzBlock(symbol, patch)


def finite(matrix):
    if not isinstance(matrix, ExactMatrix):
        matrix = ExactMatrix(matrix)
    return FiniteBlock(matrix)


def operator(*blocks):
    return BlockOperator(tuple(blocks))


def shift_operator(power=1):
    """T_{z^power}: the right shift for power > 0, the left shift for power < 0."""
    return operator(toeplitz({power: 1}))


def identity_like(a):
    return BlockOperator(tuple(
        FiniteBlock(ExactMatrix.identity(b.size)) if isinstance(b, FiniteBlock)
        else ToeplitzBlock(LaurentPoly.constant(1)) for b in a.blocks))


def zero_like(a):
    return BlockOperator(tuple(
        FiniteBlock(ExactMatrix.zeros(b.size)) if isinstance(b, FiniteBlock)
        else ToeplitzBlock(LaurentPoly()) for b in a.blocks))


def validate_operator(a, max_patch=MAX_PATCH, max_band=MAX_BAND):
    """Check size limits; returns ``a`` unchanged."""
    for i, b in enumerate(a.blocks):
        if isinstance(b, ToeplitzBlock):
            if b.patch_size > max_patch:
                raise LimitExceeded(f"blocks[{i}]: patch {b.patch_size}x{b.patch_size} exceeds limit {max_patch}")
            if b.symbol.band > max_band:
                raise LimitExceeded(f"blocks[{i}]: symbol band width {b.symbol.band} exceeds limit {max_band}")
    return a


# algebra

def _check_signatures(a, b):
    if a.signature != b.signature:
        raise ShapeMismatch(f"block signatures differ: {a.signature} vs {b.signature}")


def _add_blocks(x, y):
    if isinstance(x, FiniteBlock):
        return FiniteBlock(x.matrix + y.matrix)
    n = max(x.patch_size, y.patch_size)
    patch = None
    if n:
        px = x.patch.padded(n) if x.patch is not None else ExactMatrix.zeros(n)
        py = y.patch.padded(n) if y.patch is not None else ExactMatrix.zeros(n)
        patch = px + py
    return ToeplitzBlock(x.symbol + y.symbol, patch)


def compose_window(x, y):
    """Size of a leading window containing every entry where x∘y differs from T_{fg}.

    T_f T_g - T_{fg} lives in rows < max(hi f, 0) and columns < max(-lo g, 0);
    the patches push the support out by at most their sizes plus the bands.
    """
    f, g = x.symbol, y.symbol
    up = max(f.hi, 0) if not f.is_zero() else 0
    down = max(-g.lo, 0) if not g.is_zero() else 0
    return max(x.patch_size, y.patch_size) + up + down


def _compose_toeplitz(x, y, cap):
    f, g = x.symbol, y.symbol
    fg = f * g
    w = compose_window(x, y)
    if w > cap:
        raise LimitExceeded(f"composition patch window {w} exceeds cap {cap}")
    if w == 0:
        return ToeplitzBlock(fg)
    # (xy)_{jk} = sum_m x_{jm} y_{mk}; x_{jm} != 0 forces m <= j - lo(f) or m < patch size
    reach = w + max(-f.lo, 0) + max(g.hi, 0) + max(x.patch_size, y.patch_size) + 1
    xs = [[x.entry(j, m) for m in range(reach)] for j in range(w)]
    ycols = [[y.entry(m, k) for m in range(reach)] for k in range(w)]
    patch = []
    for j in range(w):
        xr = [(m, v) for m, v in enumerate(xs[j]) if v]
        row = []
        for k in range(w):
            col = ycols[k]
            acc = ZERO
            for m, v in xr:
                c = col[m]
                if c:
                    acc = acc + v * c
            row.append(acc - fg[j - k])
        patch.append(row)
    return ToeplitzBlock(fg, ExactMatrix(patch, w, w))


def combine(a, b, kind, cap=MAX_COMPOSE_WINDOW):
    """Blockwise sum (``kind="add"``) or product a∘b (``kind="compose"``)."""
    _check_signatures(a, b)
    if kind == "add":
        return BlockOperator(tuple(_add_blocks(x, y) for x, y in zip(a.blocks, b.blocks)))
    if kind == "compose":
        out = []
        for x, y in zip(a.blocks, b.blocks):
            if isinstance(x, FiniteBlock):
                out.append(FiniteBlock(x.matrix @ y.matrix))
            else:
                out.append(_compose_toeplitz(x, y, cap))
        return BlockOperator(tuple(out))
    raise ValueError(f"unknown combine kind {kind!r}")


def adjoint(a):
    out = []
    for b in a.blocks:
        if isinstance(b, FiniteBlock):
            out.append(FiniteBlock(b.matrix.adjoint()))
        else:
            out.append(ToeplitzBlock(b.symbol.reflect_conjugate(),
                                     None if b.patch is None else b.patch.adjoint()))
    return BlockOperator(tuple(out))


def affine(a, alpha, lam):
    """alpha * a - lam * I."""
    alpha = GaussianRational.coerce(alpha)
    lam = GaussianRational.coerce(lam)
    out = []
    for b in a.blocks:
        if isinstance(b, FiniteBlock):
            out.append(FiniteBlock(b.matrix.scale(alpha).shift(lam)))
        else:
            patch = None if b.patch is None else b.patch.scale(alpha)
            out.append(ToeplitzBlock(b.symbol * alpha - LaurentPoly.constant(lam), patch))
    return BlockOperator(tuple(out))


def scale(a, alpha):
    return affine(a, alpha, 0)


def is_compact(a):
    """Compact iff every Toeplitz symbol vanishes identically."""
    return all(b.symbol.is_zero() for b in a.toeplitz_blocks())


def _entrywise_l1(m):
    return sum((x.l1() for row in m.entries for x in row), Fraction(0))


def norm_bound(a):
    """Rational upper bound on the operator norm.

    Per block: sum of |re|+|im| over symbol coefficients plus the same sum
    over the patch entries (which dominates the patch's Frobenius norm);
    finite blocks use the entrywise sum.  The whole operator takes the max.
    """
    best = Fraction(0)
    for b in a.blocks:
        if isinstance(b, FiniteBlock):
            v = _entrywise_l1(b.matrix)
        else:
            v = b.symbol.l1() + (_entrywise_l1(b.patch) if b.patch is not None else 0)
        best = max(best, v)
    return best


def pad_with_identity_blocks(a, b):
    """Return (a ⊕ I_b, I_a ⊕ b), two operators on the same block signature.

    Indices are unchanged since identity blocks contribute nothing.
    """
    if a.signature == b.signature:
        return a, b
    ia, ib = identity_like(a), identity_like(b)
    return BlockOperator(a.blocks + ib.blocks), BlockOperator(ia.blocks + b.blocks)


def toeplitz_section(block, rows, cols=None):
    """Float leading rows x cols section of a Toeplitz block."""
    cols = rows if cols is None else cols
    out = np.zeros((rows, cols), dtype=complex)
    for d, c in block.symbol.items():
        out += complex(c) * np.eye(rows, cols, k=-d)
    if block.patch is not None:
        k = block.patch.rows
        out[:min(k, rows), :min(k, cols)] += block.patch.to_numpy()[:rows, :cols]
    return out


def section(a, n):
    """Float dense section: finite blocks whole, each Toeplitz block n x n."""
    parts = [b.matrix.to_numpy() if isinstance(b, FiniteBlock) else toeplitz_section(b, n)
             for b in a.blocks]
    return block_diag(*parts)

"""Exact matrices over Q(i), rank, kernels and subspace dimensions."""
from collections import namedtuple
from fractions import Fraction
from math import lcm

import numpy as np

from ..errors import DimensionMismatch
from .scalars import GaussianRational, ZERO, ONE

LinearData = namedtuple("LinearData", "rank kernel_basis image_basis")
SubspaceDims = namedtuple("SubspaceDims", "dim_a dim_b dim_sum dim_intersection")


class ExactMatrix:
    """Immutable dense matrix of GaussianRationals."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries, rows=None, cols=None):
        entries = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in entries)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(f"entry grid does not match shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same_shape(other)
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                           self.rows, self.cols)

    def __sub__(self, other):
        self._check_same_shape(other)
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                           self.rows, self.cols)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        c = GaussianRational.coerce(c)
        return ExactMatrix([[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.column
        cols = [ocols(j) for j in range(other.cols)]
        out = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), ZERO) for c in cols])
        return ExactMatrix(out, self.rows, other.cols)

    def __pow__(self, n):
        if not self.is_square:
            raise DimensionMismatch("power of a non-square matrix")
        out, base = ExactMatrix.identity(self.rows), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def adjoint(self):
        return ExactMatrix([[self.entries[i][j].conjugate() for i in range(self.rows)]
                            for j in range(self.cols)], self.cols, self.rows)

    def shift(self, lam):
        """self - lam * I."""
        lam = GaussianRational.coerce(lam)
        return ExactMatrix([[a - lam if i == j else a for j, a in enumerate(r)]
                            for i, r in enumerate(self.entries)], self.rows, self.cols)

    def is_zero(self):
        return not any(a for r in self.entries for a in r)

    def is_upper_triangular(self):
        return all(not self.entries[i][j] for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_lower_triangular(self):
        return all(not self.entries[i][j] for i in range(self.rows) for j in range(i + 1, self.cols))

    def padded(self, n):
        """Zero-pad to an n x n matrix (n at least the current size)."""
        return ExactMatrix([[self.entries[i][j] if i < self.rows and j < self.cols else ZERO
                             for j in range(n)] for i in range(n)], n, n)

    def to_numpy(self):
        return np.array([[complex(a) for a in r] for r in self.entries], dtype=complex).reshape(self.shape)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.entries)))
        return self._hash

    def __repr__(self):
        return f"ExactMatrix({[[str(a) for a in r] for r in self.entries]})"


# Fraction-free elimination works on Gaussian integers stored as (re, im) int pairs.

def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gi_exact_div(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    assert rr == 0 and ri == 0, "fraction-free step left a remainder"
    return (qr, qi)


def _integer_rows(rows):
    out = []
    for row in rows:
        den = lcm(1, *(x.re.denominator for x in row), *(x.im.denominator for x in row))
        out.append([((x.re * den).numerator, (x.im * den).numerator) for x in row])
    return out


def echelon(rows, ncols):
    """Fraction-free (Bareiss) row echelon form.

    Rows are first cleared of denominators, which leaves the row space
    unchanged.  Pivot rows are chosen by largest |re|+|im|.  Returns the
    echelon rows (Gaussian-integer pairs) and the pivot columns.
    """
    m = _integer_rows(rows)
    prev = (1, 0)
    r = 0
    pivots = []
    nrows = len(m)
    for c in range(ncols):
        best, best_size = None, 0
        for i in range(r, nrows):
            v = m[i][c]
            size = abs(v[0]) + abs(v[1])
            if size > best_size:
                best, best_size = i, size
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            lead = row[c]
            for j in range(c + 1, ncols):
                row[j] = _gi_exact_div(_gi_sub(_gi_mul(piv, row[j]), _gi_mul(lead, prow[j])), prev)
            row[c] = (0, 0)
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank_of(vectors, length=None):
    vectors = [tuple(GaussianRational.coerce(x) for x in v) for v in vectors]
    if not vectors:
        return 0
    n = len(vectors[0]) if length is None else length
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors of unequal length")
    return len(echelon(vectors, n)[1])


def linear_data(matrix):
    """Rank, a kernel basis and an image basis of ``matrix``, all exact.

    The kernel basis has one vector per free column of the echelon form
    (free entry 1, other free entries 0).  The image basis consists of the
    columns of ``matrix`` at the pivot positions.
    """
    ech, pivots = echelon(matrix.entries, matrix.cols)
    rank = len(pivots)
    rows = [[GaussianRational(Fraction(a), Fraction(b)) for a, b in row] for row in ech]
    pivot_set = set(pivots)
    kernel = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        x = [ZERO] * matrix.cols
        x[free] = ONE
        for i in range(rank - 1, -1, -1):
            p = pivots[i]
            row = rows[i]
            acc = ZERO
            for j in range(p + 1, matrix.cols):
                if row[j] and x[j]:
                    acc = acc + row[j] * x[j]
            x[p] = -acc / row[p]
        kernel.append(tuple(x))
    image = [matrix.column(j) for j in pivots]
    return LinearData(rank, kernel, image)


def rank(matrix):
    return len(echelon(matrix.entries, matrix.cols)[1])


def kernel_basis(matrix):
    return linear_data(matrix).kernel_basis


def image_basis(matrix):
    return linear_data(matrix).image_basis


def subspace_dims(a_basis, b_basis):
    """Dimensions of A, B, A+B and A∩B for spanning lists of equal-length vectors."""
    lengths = {len(v) for v in list(a_basis) + list(b_basis)}
    if len(lengths) > 1:
        raise DimensionMismatch(f"vectors of different lengths {sorted(lengths)}")
    da = rank_of(a_basis)
    db = rank_of(b_basis)
    ds = rank_of(list(a_basis) + list(b_basis))
    return SubspaceDims(da, db, ds, da + db - ds)

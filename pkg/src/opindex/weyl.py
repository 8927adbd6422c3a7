"""Spectra, Weyl spectra, isolated eigenvalues and poles for normal diagonal operators,
finite blocks and families of them.

A normal diagonal operator is diag(c_1, ..., c_k, a, a, ...) blockwise:
finitely many exceptional eigenvalues of finite multiplicity plus finitely
many tail values of infinite multiplicity.  Every spectral point is then
isolated, so "isolated eigenvalue of finite multiplicity" reduces to
"finite total multiplicity".
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import FrozenSet, Mapping, Optional, Tuple

from .bfredholm import finite_spectral_indices
from .errors import MalformedDocument, NonRepresentableSpectrum
from .exactcore import ExactMatrix, GaussianRational, LaurentPoly
from .opmodel import BlockOperator, FiniteBlock, ToeplitzBlock


@dataclass(frozen=True)
class NormalDiagonalOperator:
    exceptional: Tuple[Tuple[GaussianRational, int], ...]
    tails: FrozenSet[GaussianRational]

    def __post_init__(self):
        counts = Counter()
        for value, mult in self.exceptional:
            if int(mult) != mult or mult <= 0:
                raise MalformedDocument(f"multiplicity of {value} must be a positive integer", "exceptional")
            counts[GaussianRational.coerce(value)] += int(mult)
        tails = frozenset(GaussianRational.coerce(t) for t in self.tails)
        if not tails:
            raise MalformedDocument("at least one tail value is required", "tails")
        object.__setattr__(self, "exceptional",
                           tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key())))
        object.__setattr__(self, "tails", tails)

    def as_block_operator(self):
        """diag(exceptional values) ⊕ (a constant Toeplitz block per tail value)."""
        diag = [v for v, m in self.exceptional for _ in range(m)]
        blocks = [FiniteBlock(ExactMatrix.diagonal(diag))] if diag else []
        blocks += [ToeplitzBlock(LaurentPoly.constant(t)) for t in sorted(self.tails, key=lambda g: g.sort_key())]
        return BlockOperator(tuple(blocks))


@dataclass(frozen=True)
class FiniteSpectralBlock:
    """A square matrix with its eigenvalues and algebraic multiplicities."""

    matrix: ExactMatrix
    eigenvalues: Tuple[Tuple[GaussianRational, int], ...]

    def __post_init__(self):
        if not self.matrix.is_square:
            raise NonRepresentableSpectrum("finite block must be square")
        eig = tuple((GaussianRational.coerce(v), int(m)) for v, m in self.eigenvalues)
        if sum(m for _, m in eig) != self.matrix.rows:
            raise NonRepresentableSpectrum("eigenvalue multiplicities do not add up to the block size")
        for v, m in eig:
            if finite_spectral_indices(self.matrix, v).eigen_multiplicity != m:
                raise NonRepresentableSpectrum(f"{v} does not have algebraic multiplicity {m}")
        object.__setattr__(self, "eigenvalues", eig)

    @classmethod
    def from_triangular(cls, matrix):
        if not (matrix.is_upper_triangular() or matrix.is_lower_triangular()):
            raise NonRepresentableSpectrum("finite block needs explicit eigenvalues unless it is triangular")
        counts = Counter(matrix[i, i] for i in range(matrix.rows))
        return cls(matrix, tuple(counts.items()))


def _sorted(values):
    return tuple(sorted(values, key=lambda g: g.sort_key()))


@dataclass(frozen=True)
class SpectralReport:
    spectrum: FrozenSet[GaussianRational]
    weyl_spectrum: FrozenSet[GaussianRational]
    e0: FrozenSet[GaussianRational]
    pi0: FrozenSet[GaussianRational]

    def to_json(self):
        return {name: [v.to_json() for v in _sorted(getattr(self, name))]
                for name in ("spectrum", "weyl_spectrum", "e0", "pi0")}


def spectral_report(op):
    if isinstance(op, ExactMatrix):
        op = FiniteSpectralBlock.from_triangular(op)
    elif isinstance(op, FiniteBlock):
        op = FiniteSpectralBlock.from_triangular(op.matrix)
    if isinstance(op, NormalDiagonalOperator):
        exc = {v for v, _ in op.exceptional}
        spectrum = frozenset(exc | op.tails)
        e0 = frozenset(exc - op.tails)
        # normal: ascent = descent = 1 at every isolated finite-multiplicity eigenvalue
        return SpectralReport(spectrum, frozenset(op.tails), e0, e0)
    if isinstance(op, FiniteSpectralBlock):
        spectrum = frozenset(v for v, _ in op.eigenvalues)
        pi0 = frozenset(v for v in spectrum if finite_spectral_indices(op.matrix, v).is_pole_of_finite_rank)
        return SpectralReport(spectrum, frozenset(), spectrum, pi0)
    raise NonRepresentableSpectrum(f"no exact spectral data for {type(op).__name__}")


@dataclass(frozen=True)
class SpectralFamily:
    """Vertex -> operator with exact spectral data; edges play no role in the spectral sets."""

    vertices: Tuple[str, ...]
    assignment: Mapping[str, object]
    edges: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.vertices:
            raise MalformedDocument("a family needs at least one vertex", "vertices")
        missing = [v for v in self.vertices if v not in self.assignment]
        if missing:
            raise MalformedDocument(f"no operator for vertices {missing}", "operators")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "assignment", dict(self.assignment))


def _witness_set(lam, reports, member):
    """λ qualifies when A = {x : λ ∈ member(x)} is nonempty and λ lies in no other σ(T_x).

    For a finite vertex set this maximal A is the only candidate witness.
    """
    inside = [x for x, r in reports.items() if lam in member(r)]
    if not inside:
        return False
    return all(lam not in r.spectrum for x, r in reports.items() if lam not in member(r))


def family_spectral_report(f):
    reports = {x: spectral_report(f.assignment[x]) for x in f.vertices}
    spectrum = frozenset().union(*(r.spectrum for r in reports.values()))
    weyl = frozenset().union(*(r.weyl_spectrum for r in reports.values()))
    e0 = frozenset(l for l in spectrum if _witness_set(l, reports, lambda r: r.e0))
    pi0 = frozenset(l for l in spectrum if _witness_set(l, reports, lambda r: r.pi0))
    return SpectralReport(spectrum, weyl, e0, pi0)


@dataclass(frozen=True)
class WeylBrowderResult:
    weyl_holds: bool
    browder_holds: bool
    witness: Optional[GaussianRational] = None
    report: Optional[SpectralReport] = field(default=None, compare=False)

    def __iter__(self):
        return iter((self.weyl_holds, self.browder_holds, self.witness))


def _first_violation(report, removed):
    expected = report.spectrum - removed
    diff = expected ^ report.weyl_spectrum
    return _sorted(diff)[0] if diff else None


def check_weyl_browder(f):
    """Weyl: σ_W = σ \\ E0.  Browder: σ_W = σ \\ Π0.  Exact set equality."""
    if not isinstance(f, SpectralFamily):
        f = SpectralFamily(("x",), {"x": f})
    report = family_spectral_report(f)
    w = _first_violation(report, report.e0)
    b = _first_violation(report, report.pi0)
    return WeylBrowderResult(w is None, b is None, w if w is not None else b, report)

"""Exception hierarchy.

Two families: :class:`DomainError` for mathematical failures (an operator
that is not Fredholm, an inconsistent family, ...) and :class:`InputError`
for malformed documents or violated size limits.  The CLI maps the first to
exit code 2 and the second to exit code 1.
"""


class OpIndexError(Exception):
    """Base class for every error raised by this package."""

    def to_dict(self):
        out = {"error": type(self).__name__, "message": str(self)}
        out.update(getattr(self, "details", {}))
        return out


class DomainError(OpIndexError):
    pass


class InputError(OpIndexError):
    pass


# exact core
class ZeroPolynomial(DomainError):
    pass


class RootOnCircle(DomainError):
    pass


class SymbolVanishesOnCircle(DomainError):
    pass


class ZeroSymbol(DomainError):
    pass


class DimensionMismatch(InputError):
    pass


# documents and operator model
class MalformedDocument(InputError):
    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location
        self.details = {"location": location}


class LimitExceeded(InputError):
    pass


class ShapeMismatch(DomainError):
    pass


# fredholm
class NotFredholm(DomainError):
    def __init__(self, message, reason=None):
        super().__init__(message)
        self.reason = reason
        self.details = {"reason": reason}


class MarginNotFound(DomainError):
    pass


# family
class NonFredholmAt(DomainError):
    def __init__(self, vertex, reason=None, layer=None):
        where = f"vertex {vertex!r}" if layer is None else f"vertex {vertex!r}, layer {layer}"
        super().__init__(f"operator at {where} is not Fredholm ({reason})")
        self.vertex = vertex
        self.layer = layer
        self.reason = reason
        self.details = {"vertex": vertex, "layer": layer, "reason": reason}


class IndexMismatchWithinComponent(DomainError):
    def __init__(self, edge, indices):
        super().__init__(
            f"index jumps across edge {edge[0]!r}-{edge[1]!r}: {indices[0]} vs {indices[1]}; "
            "no continuous Fredholm family interpolates these samples")
        self.edge = tuple(edge)
        self.indices = tuple(indices)
        self.details = {"edge": list(edge), "indices": list(indices)}


class EdgeBoundViolated(DomainError):
    def __init__(self, edge, bound, actual):
        super().__init__(f"edge {edge[0]!r}-{edge[1]!r}: norm bound {actual} exceeds declared {bound}")
        self.details = {"edge": list(edge), "declared": str(bound), "actual": str(actual)}


class EndpointMismatch(DomainError):
    pass


class IndexChangedAlongHomotopy(DomainError):
    pass


class ComponentMismatch(DomainError):
    pass


# weyl
class NonRepresentableSpectrum(DomainError):
    pass


# pathconnect
class IndexMismatch(DomainError):
    pass


class FredholmPathUnsupported(DomainError):
    pass


class CertificationFailed(DomainError):
    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t
        self.details = {"t": None if t is None else str(t)}


class SnapCertificationFailed(DomainError):
    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t
        self.details = {"t": None if t is None else str(t)}

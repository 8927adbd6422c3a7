"""Laurent polynomials: the symbols of banded Toeplitz blocks."""
import numpy as np

from ..errors import MalformedDocument, SymbolVanishesOnCircle, ZeroSymbol
from .polynomials import circle_roots_exist, schur_cohn_count
from .scalars import GaussianRational, ZERO


class LaurentPoly:
    """Finitely supported map degree -> coefficient, zeros never stored."""

    __slots__ = ("_items", "_hash")

    def __init__(self, coeffs=None):
        items = {}
        for k, v in dict(coeffs or {}).items():
            v = GaussianRational.coerce(v)
            if v:
                items[int(k)] = v
        object.__setattr__(self, "_items", tuple(sorted(items.items())))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def monomial(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def from_dense(cls, lo, coeffs):
        return cls({lo + i: c for i, c in enumerate(coeffs)})

    @property
    def coeffs(self):
        return dict(self._items)

    def items(self):
        return self._items

    def __getitem__(self, k):
        for d, c in self._items:
            if d == k:
                return c
        return ZERO

    def is_zero(self):
        return not self._items

    @property
    def lo(self):
        return self._items[0][0] if self._items else 0

    @property
    def hi(self):
        return self._items[-1][0] if self._items else 0

    @property
    def band(self):
        """Number of nonzero diagonals spanned, hi - lo + 1 (0 for the zero symbol)."""
        return self.hi - self.lo + 1 if self._items else 0

    def to_polynomial(self):
        """(lo, coefficients of z^-lo * f, lowest degree first)."""
        lo = self.lo
        dense = [ZERO] * (self.hi - lo + 1) if self._items else []
        for d, c in self._items:
            dense[d - lo] = c
        return lo, tuple(dense)

    def __add__(self, other):
        out = dict(self._items)
        for d, c in other._items:
            out[d] = out.get(d, ZERO) + c
        return LaurentPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly({d: -c for d, c in self._items})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = GaussianRational.coerce(other)
            return LaurentPoly({d: c * v for d, v in self._items})
        out = {}
        for d1, c1 in self._items:
            for d2, c2 in other._items:
                out[d1 + d2] = out.get(d1 + d2, ZERO) + c1 * c2
        return LaurentPoly(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def reflect_conjugate(self):
        """Symbol of the adjoint Toeplitz operator: a_n -> conj(a_{-n})."""
        return LaurentPoly({-d: c.conjugate() for d, c in self._items})

    def l1(self):
        """Sum of |re|+|im| over coefficients; bounds sup |f| on the circle."""
        return sum((c.l1() for _, c in self._items), ZERO.re)

    def derivative_l1(self):
        """Sum of |n| (|re|+|im|) over coefficients; bounds |d f(e^{it}) / dt|."""
        return sum((abs(d) * c.l1() for d, c in self._items), ZERO.re)

    def __call__(self, z):
        return sum(complex(c) * z ** d for d, c in self._items)

    def on_circle(self, thetas):
        z = np.exp(1j * np.asarray(thetas, dtype=float))
        out = np.zeros_like(z)
        for d, c in self._items:
            out = out + complex(c) * z ** d
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._items))
        return self._hash

    def __repr__(self):
        if not self._items:
            return "LaurentPoly(0)"
        terms = " + ".join(f"({c})z^{d}" if d else f"({c})" for d, c in self._items)
        return f"LaurentPoly({terms})"

    def to_json(self):
        return {str(d): c.to_json() for d, c in self._items}

    @classmethod
    def from_json(cls, doc, location="symbol"):
        if not isinstance(doc, dict):
            raise MalformedDocument("symbol must be a map from degree to coefficient", location)
        out = {}
        for k, v in doc.items():
            try:
                d = int(k)
            except (TypeError, ValueError):
                raise MalformedDocument(f"degree {k!r} is not a decimal integer", location) from None
            out[d] = GaussianRational.from_json(v, f"{location}[{k}]")
        return cls(out)


def vanishes_on_circle(f):
    if f.is_zero():
        raise ZeroSymbol("zero symbol")
    return circle_roots_exist(f.to_polynomial()[1])


def winding(f):
    """Winding number of t -> f(e^{it}) around the origin.

    Equals lo plus the number of roots of the polynomial z^-lo f inside the
    open unit disk.
    """
    if f.is_zero():
        raise ZeroSymbol("the zero symbol has no winding number")
    lo, p = f.to_polynomial()
    if circle_roots_exist(p):
        raise SymbolVanishesOnCircle(f"symbol {f!r} vanishes on the unit circle")
    return lo + schur_cohn_count(p)


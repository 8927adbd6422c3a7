"""Gaussian rationals: complex numbers with rational real and imaginary parts.

Literal formats used by every document:

    "p/q" or "p"                     a rational
    {"re": "p/q", "im": "p/q"}       a Gaussian rational
    "p/q"                            shorthand for a purely real Gaussian rational
"""
from fractions import Fraction
import re as _re

from ..errors import MalformedDocument

_RATIONAL = _re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def parse_rational(text, location=None):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction; integers are accepted too."""
    if isinstance(text, bool):
        raise MalformedDocument(f"expected a rational string, got {text!r}", location)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise MalformedDocument(f"expected a rational string 'p/q', got {text!r}", location)
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise MalformedDocument(f"zero denominator in {text!r}", location) from None


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """An exact element of Q(i).

    Instances are immutable and compare equal to ints and Fractions with
    zero imaginary part.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x):
        if type(x) is cls:
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return cls(Fraction(x))
        if isinstance(x, str):
            return cls(parse_rational(x))
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.im:
            if not self.im:
                return GaussianRational(self.re * o.re)
            return GaussianRational(self.re * o.re, self.im * o.re)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero GaussianRational")
            return GaussianRational(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self):
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def l1(self):
        """|re| + |im|, a rational upper bound on the modulus."""
        return abs(self.re) + abs(self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({format_rational(self.re)!r})"
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"

    # documents
    def to_json(self):
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, doc, location=None):
        if isinstance(doc, (str, int)) and not isinstance(doc, bool):
            return cls(parse_rational(doc, location))
        if isinstance(doc, dict):
            extra = set(doc) - {"re", "im"}
            if extra:
                raise MalformedDocument(f"unexpected keys {sorted(extra)} in Gaussian rational", location)
            return cls(parse_rational(doc.get("re", "0"), f"{location}.re" if location else "re"),
                       parse_rational(doc.get("im", "0"), f"{location}.im" if location else "im"))
        raise MalformedDocument(f"expected a Gaussian rational, got {doc!r}", location)


def _coerce(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq(x, y=0):
    """Shorthand constructor: ``gq(1, 2)`` is 1+2i, ``gq("1/3")`` is 1/3."""
    if y == 0:
        return GaussianRational.coerce(x)
    return GaussianRational.coerce(x) + GaussianRational.coerce(y) * I

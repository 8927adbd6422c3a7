"""Dense univariate polynomials over Q or Q(i), exact root location on the circle.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Coefficients may be
Fractions (for the real Sturm machinery) or GaussianRationals; every helper
here only uses field operations and ``conjugate()``.
"""
from fractions import Fraction

from ..errors import RootOnCircle, ZeroPolynomial
from .scalars import GaussianRational, ONE, I


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def as_gaussian(p):
    return trim(GaussianRational.coerce(c) for c in p)


def degree(p):
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim((p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n))


def sub(p, q):
    n = max(len(p), len(q))
    return trim((p[k] if k < len(p) else 0) - (q[k] if k < len(q) else 0) for k in range(n))


def scale(p, c):
    if c == 0:
        return ()
    return tuple(c * a for a in p)


def mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [0] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c != 0:
            for j in range(dq + 1):
                rem[k + j] = rem[k + j] - c * q[j]
    return trim(quot), trim(rem[:dq])


def monic(p):
    if not p:
        return p
    lead = p[-1]
    return tuple(a / lead for a in p)


def gcd(p, q):
    """Monic gcd by the Euclidean algorithm (exact over a field)."""
    p, q = trim(p), trim(q)
    while q:
        p, q = q, monic(divmod_poly(p, q)[1])
    return monic(p)


def derivative(p):
    return trim(k * p[k] for k in range(1, len(p)))


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reciprocal_conjugate(p):
    """z^n * conj(p(1/conj(z))) for n = deg p: coefficients reversed and conjugated.

    On the unit circle it has the same modulus as p, and its roots are the
    reflections 1/conj(r) of the nonzero roots of p.
    """
    return trim(c.conjugate() for c in reversed(p))


def real_part(p):
    return trim(GaussianRational.coerce(c).re for c in p)


def imag_part(p):
    return trim(GaussianRational.coerce(c).im for c in p)


def cayley(p):
    """q(t) = (1 - it)^n p((1 + it)/(1 - it)), n = deg p.

    t in R parametrises the unit circle minus z = -1 counterclockwise
    starting from -1.  deg q = n exactly when p(-1) != 0.
    """
    n = degree(p)
    plus = (ONE, I)
    minus = (ONE, -I)
    plus_pows = [(ONE,)]
    minus_pows = [(ONE,)]
    for _ in range(n):
        plus_pows.append(mul(plus_pows[-1], plus))
        minus_pows.append(mul(minus_pows[-1], minus))
    q = ()
    for k, a in enumerate(p):
        if a != 0:
            q = add(q, scale(mul(plus_pows[k], minus_pows[n - k]), a))
    return q


# real root machinery over Q

def _sign(x):
    return (x > 0) - (x < 0)


def _sign_at_infinity(p, positive):
    s = _sign(p[-1])
    if not positive and degree(p) % 2:
        s = -s
    return s


def _variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p0, p1):
    chain = [trim(p0), trim(p1)]
    while chain[-1]:
        r = divmod_poly(chain[-2], chain[-1])[1]
        chain.append(tuple(-c for c in r))
    return chain[:-1]


def real_root_count(p):
    """Number of distinct real roots of a nonzero polynomial with rational coefficients."""
    p = trim(Fraction(c) for c in p)
    if not p:
        raise ZeroPolynomial("zero polynomial has every real number as a root")
    if degree(p) == 0:
        return 0
    chain = sturm_chain(p, derivative(p))
    return (_variations([_sign_at_infinity(s, False) for s in chain])
            - _variations([_sign_at_infinity(s, True) for s in chain]))


def cauchy_index(num, den):
    """Cauchy index of num/den over the whole real line.

    Counts +1 for every pole where num/den jumps from -inf to +inf and -1
    for the reverse.  Valid when num and den have no common real root.
    """
    num = trim(Fraction(c) for c in num)
    den = trim(Fraction(c) for c in den)
    if not num:
        return 0
    if not den:
        raise ZeroDivisionError("denominator is the zero polynomial")
    chain = sturm_chain(den, num)
    return (_variations([_sign_at_infinity(s, False) for s in chain])
            - _variations([_sign_at_infinity(s, True) for s in chain]))


# unit circle

def circle_roots_exist(p):
    """True iff p has a root of modulus exactly one.

    Circle roots are common roots of p and its reciprocal conjugate.  The
    common factor g is pulled back to the real line through the Cayley map,
    where a root corresponds to a common real root of Re and Im of the
    transformed polynomial, counted exactly with a Sturm chain.
    """
    p = as_gaussian(p)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    if degree(p) == 0:
        return False
    g = gcd(p, reciprocal_conjugate(p))
    if degree(g) <= 0:
        return False
    if evaluate(g, -1) == 0:
        return True
    q = cayley(g)
    h = gcd(real_part(q), imag_part(q))
    if degree(h) <= 0:
        return False
    return real_root_count(h) > 0


def cauchy_disk_count(p):
    """Roots of p in the open unit disk via the argument principle on the circle.

    Requires that p has no root on the circle.  With q the Cayley transform
    rotated so its leading coefficient is real and positive, the winding
    of p around 0 equals (deg p - Ind(Im q / Re q)) / 2.
    """
    p = as_gaussian(p)
    n = degree(p)
    if n <= 0:
        return 0
    q = cayley(p)
    assert degree(q) == n, "p(-1) == 0 means a root on the circle"
    q = scale(q, q[-1].conjugate())
    ind = cauchy_index(imag_part(q), real_part(q))
    count, odd = divmod(n - ind, 2)
    assert not odd and 0 <= count <= n
    return count


def schur_cohn_count(p):
    """Number of roots of p in the open unit disk, with multiplicity.

    Schur-Cohn reduction: with a0 = p(0), an the leading coefficient and
    p* the reciprocal conjugate, Rouche's theorem on the circle gives

        |an| > |a0|:  N(p) = 1 + N((conj(an) p - a0 p*) / z)
        |a0| > |an|:  N(p) = N(conj(a0) p - an p*)

    Both steps strictly lower the degree.  A step with |a0| == |an| is
    finished by :func:`cauchy_disk_count`, which has no degenerate cases.
    """
    p = as_gaussian(p)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    if circle_roots_exist(p):
        raise RootOnCircle("polynomial has a root on the unit circle")
    count = 0
    while degree(p) > 0:
        k = 0
        while p[k] == 0:
            k += 1
        if k:
            count += k
            p = p[k:]
            continue
        a0, an = p[0], p[-1]
        m0, mn = a0.abs2(), an.abs2()
        ps = reciprocal_conjugate(p)
        if mn > m0:
            r = sub(scale(p, an.conjugate()), scale(ps, a0))
            assert r[0] == 0 and degree(r) == degree(p)
            p = monic(r[1:])
            count += 1
        elif m0 > mn:
            p = monic(sub(scale(p, a0.conjugate()), scale(ps, an)))
        else:
            return count + cauchy_disk_count(p)
    return count

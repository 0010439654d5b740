"""
Exact arithmetic primitives.

Everything here works on Python integers, :py:class:`fractions.Fraction` and
dense integer coefficient tuples. Nothing is ever converted to a float.

A polynomial is represented by its coefficients in ascending degree, e.g.
``(1, 3, 1)`` is ``1 + 3x + x**2``. Trailing zeros are stripped, so the zero
polynomial is the empty tuple.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from saltext.vrmat.exceptions import NotInvertibleError
from saltext.vrmat.exceptions import NotPrimeError

log = logging.getLogger(__name__)

Rational = Fraction


def binom(n, k):
    """
    Binomial coefficient C(n, k) for ``n >= 0``; 0 when ``k`` is out of range.
    """
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def catalan(n):
    """
    n-th Catalan number.
    """
    return binom(2 * n, n) // (n + 1)


def _normalize(coeffs):
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class Poly:
    """
    Integer polynomial in a single indeterminate.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(tuple(self.coeffs)))

    @classmethod
    def monomial(cls, coeff, power):
        return cls((0,) * power + (coeff,))

    @property
    def degree(self):
        """
        Degree, with -1 for the zero polynomial.
        """
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, power):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __call__(self, x):
        # Horner
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def __add__(self, other):
        return poly_add(self, other)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            if power == 0:
                terms.append(str(c))
            elif power == 1:
                terms.append(f"{c}x" if c != 1 else "x")
            else:
                terms.append(f"{c}x^{power}" if c != 1 else f"x^{power}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self):
        """
        Ascending-degree list of decimal strings.
        """
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(int(c) for c in data))


ZERO = Poly()
ONE = Poly((1,))
X = Poly((0, 1))


def poly_add(p, q):
    if len(p.coeffs) < len(q.coeffs):
        p, q = q, p
    res = list(p.coeffs)
    for i, c in enumerate(q.coeffs):
        res[i] += c
    return Poly(tuple(res))


def poly_sub(p, q):
    return poly_add(p, poly_scale_shift(q, -1, 0))


def poly_mul(p, q):
    if p.is_zero() or q.is_zero():
        return ZERO
    res = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if not a:
            continue
        for j, b in enumerate(q.coeffs):
            res[i + j] += a * b
    return Poly(tuple(res))


def poly_scale_shift(p, c, s):
    """
    Multiply ``p`` by ``c * x**s``.
    """
    if not c or p.is_zero():
        return ZERO
    return Poly((0,) * s + tuple(c * a for a in p.coeffs))


def mod_p(x, p):
    """
    Canonical residue of ``x`` in ``[0, p)``.
    """
    return x % p


def modp_inverse(x, p):
    """
    Inverse of ``x`` modulo the prime ``p``.
    """
    x = x % p
    if x == 0:
        raise NotInvertibleError(f"{x} is not invertible modulo {p}")
    return pow(x, -1, p)


def is_prime(p):
    """
    Primality by trial division; fine at the sizes this library deals with.
    """
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime(p):
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not a prime")
    return p


def poly_mod_p(poly, p):
    return Poly(tuple(c % p for c in poly.coeffs))


def poly_divmod_mod_p(num, den, p):
    """
    Polynomial long division over F_p. Returns ``(quotient, remainder)`` with
    canonical residues as coefficients.
    """
    den = poly_mod_p(den, p)
    if den.is_zero():
        raise NotInvertibleError("division by the zero polynomial")
    rem = [c % p for c in num.coeffs]
    lead_inv = modp_inverse(den.coeffs[-1], p)
    quot = [0] * max(len(rem) - len(den.coeffs) + 1, 0)
    for shift in range(len(quot) - 1, -1, -1):
        factor = rem[shift + den.degree] * lead_inv % p
        quot[shift] = factor
        if not factor:
            continue
        for i, c in enumerate(den.coeffs):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
    return Poly(tuple(quot)), Poly(tuple(rem))


def to_int_if_integral(value):
    """
    Demote an integral Fraction to int, leave anything else alone.
    """
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def format_number(value):
    """
    Decimal string for an Integer, ``p/q`` for a non-integral Rational.
    """
    value = to_int_if_integral(value)
    return str(value)


def poly_eval(p, x):
    """
    Value of ``p`` at the integer or rational ``x``.
    """
    return p(x)

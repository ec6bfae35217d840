"""Exact Gaussian rationals.

Real values are plain ``gmpy2.mpq``.  Values with a nonzero imaginary part are
``GaussianRational``.  Every operation returns the narrowest type, so purely
real computations never pay for complex bookkeeping.
"""

from __future__ import annotations

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


class GaussianRational:
    """``re + im*i`` with exact rational parts; ``im`` is never zero."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)
        if not self.im:
            raise ValueError("use mpq for real values")

    # construction helpers -------------------------------------------------
    @staticmethod
    def _make(re, im):
        if not im:
            return re
        obj = object.__new__(GaussianRational)
        obj.re = re
        obj.im = im
        return obj

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        return GaussianRational._make(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        return GaussianRational._make(self.re - other, self.im)

    def __rsub__(self, other):
        return GaussianRational._make(other - self.re, -self.im)

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if not other:
            return ZERO
        return GaussianRational._make(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is GaussianRational:
            c, d = other.re, other.im
            n = c * c + d * d
            a, b = self.re, self.im
            return GaussianRational._make((a * c + b * d) / n, (b * c - a * d) / n)
        return GaussianRational._make(self.re / other, self.im / other)

    def __rtruediv__(self, other):
        n = self.re * self.re + self.im * self.im
        return GaussianRational._make(other * self.re / n, -other * self.im / n)

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def conjugate(self):
        return GaussianRational._make(self.re, -self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_number(self)


I = GaussianRational(0, 1)


def gaussian(re, im=0):
    """Build an exact Gaussian rational from anything ``mpq`` accepts."""
    im = mpq(im)
    if not im:
        return mpq(re)
    return GaussianRational(re, im)


def as_number(value):
    """Coerce ints, strings, Fractions and Gaussian rationals into the tower."""
    if type(value) is GaussianRational:
        return value
    if isinstance(value, complex):
        raise TypeError("floating complex values are not exact")
    if isinstance(value, float):
        raise TypeError("floats are not exact")
    return mpq(value)


def re_part(c):
    return c.re if type(c) is GaussianRational else c


def im_part(c):
    return c.im if type(c) is GaussianRational else ZERO


def conj(c):
    return c.conjugate() if type(c) is GaussianRational else c


def is_real(c) -> bool:
    return type(c) is not GaussianRational


def sqrt_exact(c):
    """Square root in Q(i) when one exists, else ``None``."""
    a, b = re_part(c), im_part(c)
    if not b:
        if a >= 0:
            r = _rational_sqrt(a)
            return r
        r = _rational_sqrt(-a)
        return None if r is None else GaussianRational._make(ZERO, r)
    modulus = _rational_sqrt(a * a + b * b)
    if modulus is None:
        return None
    p = _rational_sqrt((a + modulus) / 2)
    if p is None or not p:
        return None
    q = b / (2 * p)
    return GaussianRational._make(p, q)


def _rational_sqrt(q):
    from gmpy2 import is_square, isqrt

    q = mpq(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if not (is_square(n) and is_square(d)):
        return None
    return mpq(isqrt(n), isqrt(d))


def format_number(c) -> str:
    """Plain text for a coefficient, parseable by the expression grammar."""
    a, b = re_part(c), im_part(c)
    if not b:
        return str(a)
    imag = "i" if b == 1 else "-i" if b == -1 else f"{b}*i"
    if not a:
        return imag
    if b < 0:
        mag = "i" if b == -1 else f"{-b}*i"
        return f"({a} - {mag})"
    return f"({a} + {imag})"


def sort_key(c):
    """Total order used wherever a canonical ordering of values is needed."""
    return (re_part(c), im_part(c))

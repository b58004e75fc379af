"""Exact arithmetic over the Gaussian rationals Q(i)."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "ScalarParseError",
    "as_scalar",
    "parse_scalar",
    "factorial",
    "binomial",
    "ZERO",
    "ONE",
    "I",
]


class ScalarParseError(ValueError):
    pass


_new = object.__new__


class GaussianRational:
    """An immutable number ``re + im*i`` with exact rational parts.

    The components are ``gmpy2.mpq`` values, which are always stored in
    lowest terms with a positive denominator, so structural equality is
    value equality.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @classmethod
    def _raw(cls, re, im):
        # Hot path: both parts are already mpq. Instances are treated as
        # immutable; nothing in the package assigns to re/im after creation.
        obj = _new(cls)
        obj.re = re
        obj.im = im
        return obj

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = as_scalar(other)
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = as_scalar(other)
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """``|z|^2`` as an ``mpq``."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = as_scalar(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, m):
        if not isinstance(m, int):
            raise TypeError("exponent must be an integer")
        # 0**0 == 1 by convention.
        if m < 0:
            return self.inverse() ** (-m)
        result = ONE
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def __eq__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational('{self}')"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_scalar(x) -> GaussianRational:
    """Coerce ints, fractions, mpq and scalar strings to ``GaussianRational``."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int) or type(x).__name__ == "mpq":
        return GaussianRational._raw(mpq(x), mpq(0))
    if isinstance(x, Fraction):
        return GaussianRational._raw(mpq(x.numerator, x.denominator), mpq(0))
    raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")


_RAT = r"-?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^({_RAT})$")
_IMAG_RE = re.compile(rf"^(?:({_RAT})([+-]))?(-?)(\d+(?:/\d+)?)?i$")


def _parse_rat(text: str):
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        return mpq(int(num), int(den))
    return mpq(int(text))


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``"2"``, ``"-1/3"``, ``"1/2+3i"``, ``"-i"`` and the like."""
    if not isinstance(text, str):
        raise ScalarParseError(f"expected a scalar string, got {type(text).__name__}")
    s = text.strip()
    m = _REAL_RE.match(s)
    if m:
        return GaussianRational._raw(_parse_rat(m.group(1)), mpq(0))
    m = _IMAG_RE.match(s)
    if not m:
        raise ScalarParseError(f"malformed scalar {text!r}")
    re_txt, op, sign, im_txt = m.groups()
    re_part = _parse_rat(re_txt) if re_txt is not None else mpq(0)
    im_part = _parse_rat(im_txt) if im_txt is not None else mpq(1)
    if sign == "-":
        im_part = -im_part
    if op == "-":
        im_part = -im_part
    return GaussianRational._raw(re_part, im_part)


def _format_rat(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Inverse of :func:`parse_scalar` (canonical form)."""
    re_part, im_part = z.re, z.im
    if not im_part:
        return _format_rat(re_part)
    if abs(im_part) == 1:
        im_txt = "i"
    else:
        im_txt = _format_rat(abs(im_part)) + "i"
    if not re_part:
        return ("-" if im_part < 0 else "") + im_txt
    return _format_rat(re_part) + ("-" if im_part < 0 else "+") + im_txt


@lru_cache(maxsize=None)
def factorial(n: int) -> GaussianRational:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return GaussianRational(math.factorial(n))


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> GaussianRational:
    """``C(n, k)``, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError("binomial needs n >= 0")
    if k < 0 or k > n:
        return ZERO
    return GaussianRational(math.comb(n, k))

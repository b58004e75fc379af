"""Dense univariate polynomials in the indeterminate ``d`` over Q(i)."""

from __future__ import annotations

import math
import re
from functools import lru_cache

from .scalar import ONE, ZERO, GaussianRational, as_scalar, format_scalar, parse_scalar

__all__ = ["Poly", "NEG_INF", "j_basis", "to_j_basis", "from_j_basis", "parse_poly"]

#: Degree of the zero polynomial.
NEG_INF = -math.inf


def _trim(coeffs: list) -> tuple:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial ``c0 + c1*d + c2*d^2 + ...`` stored constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim([as_scalar(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> Poly:
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def monomial(cls, n: int, c=ONE) -> Poly:
        c = as_scalar(c)
        if not c:
            return ZERO_POLY
        return cls._raw((ZERO,) * n + (c,))

    @classmethod
    def constant(cls, c) -> Poly:
        return cls.monomial(0, c)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, n: int) -> GaussianRational:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(_trim(out))

    def __neg__(self) -> Poly:
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c) -> Poly:
        c = as_scalar(c)
        if not c:
            return ZERO_POLY
        return Poly._raw(tuple(x * c for x in self.coeffs))

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._raw(_trim(out))

    __rmul__ = scale

    def mul_linear(self, c) -> Poly:
        """Multiply by ``d + c``."""
        a = self.coeffs
        if not a:
            return ZERO_POLY
        c = as_scalar(c)
        out = [ZERO] * (len(a) + 1)
        for i, x in enumerate(a):
            out[i + 1] = out[i + 1] + x
            if c:
                out[i] = out[i] + x * c
        return Poly._raw(_trim(out))

    def shift(self, m) -> Poly:
        """Return ``g`` with ``g(d) = f(d - m)`` (Horner substitution)."""
        m = as_scalar(m)
        a = self.coeffs
        if not m or len(a) < 2:
            return self
        neg = -m
        out: list = []
        for c in reversed(a):
            # out <- out * (d - m) + c
            nxt = [ZERO] * (len(out) + 1)
            for i, x in enumerate(out):
                nxt[i + 1] = nxt[i + 1] + x
                nxt[i] = nxt[i] + x * neg
            nxt[0] = nxt[0] + c
            out = nxt
        return Poly._raw(_trim(out))

    def __call__(self, x) -> GaussianRational:
        x = as_scalar(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divisible_by_d(self) -> bool:
        return not self.coeff(0)

    def __repr__(self):
        return f"Poly('{self}')"

    def __str__(self):
        return format_poly(self)


ZERO_POLY = Poly._raw(())
ONE_POLY = Poly._raw((ONE,))
D = Poly._raw((ZERO, ONE))
Poly.ZERO = ZERO_POLY
Poly.ONE = ONE_POLY
Poly.D = D


@lru_cache(maxsize=None)
def j_basis(m: int, n: int) -> Poly:
    """``J_m^n = (d - (m+1)) (d - (m+2)) ... (d - (m+n))``; ``J_m^0 = 1``."""
    if n < 0:
        raise ValueError("j_basis needs n >= 0")
    p = ONE_POLY
    for j in range(m + 1, m + n + 1):
        p = p.mul_linear(-j)
    return p


def to_j_basis(f: Poly, m: int) -> list:
    """Coefficients ``c_n`` with ``f = sum c_n J_m^n``.

    The basis is degree-triangular with monic members, so peel off the
    leading coefficient from the top degree down.
    """
    rest = f
    out = [ZERO] * len(f.coeffs)
    while rest:
        n = len(rest.coeffs) - 1
        c = rest.coeffs[-1]
        out[n] = c
        rest = rest - j_basis(m, n).scale(c)
    return out


def from_j_basis(coeffs, m: int) -> Poly:
    p = ZERO_POLY
    for n, c in enumerate(coeffs):
        if c:
            p = p + j_basis(m, n).scale(c)
    return p


def format_poly(p: Poly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for n, c in enumerate(p.coeffs):
        if not c:
            continue
        if n == 0:
            parts.append(format_scalar(c))
        elif n == 1:
            parts.append(f"{format_scalar(c)}*d")
        else:
            parts.append(f"{format_scalar(c)}*d^{n}")
    return " + ".join(parts)


_POLY_TERM = re.compile(r"^(?P<c>[^*\s]+)(?:\*d(?:\^(?P<n>\d+))?)?$")


def parse_poly(text: str) -> Poly:
    """Parse the text form produced by :func:`format_poly`."""
    text = text.strip()
    if text == "0":
        return ZERO_POLY
    coeffs: dict[int, GaussianRational] = {}
    for chunk in re.split(r"\s+\+\s+", text):
        m = _POLY_TERM.match(chunk.strip())
        if not m:
            raise ValueError(f"malformed polynomial term {chunk!r}")
        if "*d" in chunk:
            n = int(m.group("n") or 1)
        else:
            n = 0
        coeffs[n] = coeffs.get(n, ZERO) + parse_scalar(m.group("c"))
    top = max(coeffs)
    return Poly([coeffs.get(n, ZERO) for n in range(top + 1)])

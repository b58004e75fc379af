"""The Virasoro modules M(V, mu, Omega(lambda, alpha)) = V (x) C[d].

For ``v`` in the induced a-module ``V`` and ``f`` in ``C[d]``::

    L_m (v (x) f) = v (x) lambda^m (d - m alpha) f(d - m)
                    + (mu^m E_m - L_-1) v (x) lambda^m f(d - m)
    C (v (x) f)   = 0

with ``E_m = e^{mt} d/dt = sum_i m^i/i! L_{i-1}``.  Elements are stored as
blocks ``(k, s) -> polynomial in d`` for the basis vector ``L_-1^k e_s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .hmod import BModuleSpec, InducedElement, _exp_basis
from .omega import OmegaParams
from .poly import Poly
from .scalar import ONE, ZERO, GaussianRational, as_scalar, factorial, format_scalar, parse_scalar

__all__ = [
    "TensorParams",
    "TensorElement",
    "FModuleView",
    "l_action",
    "central_action",
    "f_action",
    "apply_word",
    "parse_element",
    "parse_word",
]


@dataclass(frozen=True)
class TensorParams:
    mu: GaussianRational
    omega: OmegaParams
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", as_scalar(self.mu))
        if not self.mu:
            raise ValueError("mu must be nonzero")

    @classmethod
    def of(cls, mu, lambda_, alpha) -> TensorParams:
        return cls(as_scalar(mu), OmegaParams(lambda_, alpha))

    @property
    def lambda_(self) -> GaussianRational:
        return self.omega.lambda_

    @property
    def alpha(self) -> GaussianRational:
        return self.omega.alpha

    def lambda_pow(self, m: int) -> GaussianRational:
        key = ("lam", m)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self.omega.lambda_**m
        return hit

    def as_dict(self) -> dict:
        return {"mu": str(self.mu), "lambda": str(self.lambda_), "alpha": str(self.alpha)}


def _trim(coeffs: list) -> tuple:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class TensorElement:
    """Finite sum of ``c * L_-1^k e_s (x) d^n``, canonical (no zero terms)."""

    __slots__ = ("blocks",)

    def __init__(self, terms=None):
        acc: dict = {}
        for (k, s, n), c in (terms or {}).items():
            if k < 0 or s < 0 or n < 0:
                raise ValueError(f"negative index in term {(k, s, n)}")
            c = as_scalar(c)
            if c:
                acc.setdefault((k, s), {})[n] = acc.setdefault((k, s), {}).get(n, ZERO) + c
        blocks = {}
        for key, coeffs in acc.items():
            p = Poly([coeffs.get(n, ZERO) for n in range(max(coeffs) + 1)])
            if p:
                blocks[key] = p
        self.blocks = blocks

    @classmethod
    def from_blocks(cls, blocks: dict) -> TensorElement:
        x = object.__new__(cls)
        x.blocks = {key: p for key, p in blocks.items() if p}
        return x

    @classmethod
    def zero(cls) -> TensorElement:
        return cls.from_blocks({})

    @classmethod
    def monomial(cls, k: int, s: int, n: int, c=ONE) -> TensorElement:
        return cls.from_blocks({(k, s): Poly.monomial(n, c)})

    @classmethod
    def pure(cls, v: InducedElement, f: Poly) -> TensorElement:
        """``v (x) f``."""
        return cls.from_blocks({(k, s): f.scale(c) for k, s, c in v.items()})

    def terms(self) -> dict:
        out = {}
        for (k, s), p in self.blocks.items():
            for n, c in enumerate(p.coeffs):
                if c:
                    out[(k, s, n)] = c
        return out

    def items(self):
        """``((k, s, n), c)`` in sorted order."""
        return sorted(self.terms().items())

    def coeff(self, k: int, s: int, n: int) -> GaussianRational:
        p = self.blocks.get((k, s))
        return p.coeff(n) if p is not None else ZERO

    def block(self, k: int, s: int) -> Poly:
        return self.blocks.get((k, s), Poly.ZERO)

    @property
    def max_k(self) -> int:
        return max((k for k, _ in self.blocks), default=-1)

    @property
    def max_n(self) -> int:
        return max((len(p) - 1 for p in self.blocks.values()), default=-1)

    def is_zero(self) -> bool:
        return not self.blocks

    def __bool__(self):
        return bool(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(tuple(sorted(self.blocks.items())))

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.blocks)
        for key, p in other.blocks.items():
            out[key] = out[key] + p if key in out else p
        return TensorElement.from_blocks(out)

    def __neg__(self) -> TensorElement:
        return TensorElement.from_blocks({key: -p for key, p in self.blocks.items()})

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def scale(self, c) -> TensorElement:
        c = as_scalar(c)
        if not c:
            return TensorElement.zero()
        return TensorElement.from_blocks({key: p.scale(c) for key, p in self.blocks.items()})

    __rmul__ = scale

    def lminus_mul(self) -> TensorElement:
        """``L_-1 (x) 1`` in the free structure of ``C[L_-1] (x) V_B (x) C[d]``."""
        return TensorElement.from_blocks({(k + 1, s): p for (k, s), p in self.blocks.items()})

    def d_mul(self) -> TensorElement:
        """``1 (x) d``."""
        return TensorElement.from_blocks(
            {key: Poly._raw((ZERO,) + p.coeffs) for key, p in self.blocks.items()}
        )

    def to_json(self) -> list:
        return [{"k": k, "s": s, "n": n, "c": format_scalar(c)} for (k, s, n), c in self.items()]

    @classmethod
    def from_json(cls, data) -> TensorElement:
        if not isinstance(data, list):
            raise ValueError("element JSON must be a list of terms")
        terms: dict = {}
        for t in data:
            try:
                key = (int(t["k"]), int(t["s"]), int(t["n"]))
                terms[key] = terms.get(key, ZERO) + parse_scalar(t["c"])
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed element term {t!r}") from exc
        return cls(terms)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"TensorElement('{self}')"


def format_element(x: TensorElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for (k, s, n), c in x.items():
        head = f"L-1^{k} " if k else ""
        tail = f" d^{n}" if n else ""
        parts.append(f"{head}e_{s}{tail} * {format_scalar(c)}")
    return " + ".join(parts)


_TERM_RE = re.compile(
    r"^(?:L-1\^(?P<k>\d+)\s*)?e_(?P<s>\d+)(?:\s*d\^(?P<n>\d+))?\s*\*\s*(?P<c>\S+)$"
)


def parse_element(text: str) -> TensorElement:
    """Parse ``"L-1^1 e_0 d^2 * 1/2 + e_0 * -i"``; ``"0"`` is the zero element."""
    text = text.strip()
    if text == "0":
        return TensorElement.zero()
    terms: dict = {}
    for chunk in re.split(r"\s+\+\s+", text):
        m = _TERM_RE.match(chunk.strip())
        if not m:
            raise ValueError(f"malformed element term {chunk!r}")
        key = (int(m.group("k") or 0), int(m.group("s")), int(m.group("n") or 0))
        terms[key] = terms.get(key, ZERO) + parse_scalar(m.group("c"))
    return TensorElement(terms)


def _second_vector(p: TensorParams, spec: BModuleSpec, m: int, k: int, s: int, correction: bool = True):
    """Coordinates of ``(mu^m E_m - L_-1) L_-1^k e_s`` as ``[(k', s', c)]``."""
    key = ("sec", p.mu, m, k, s, correction)
    hit = spec._cache.get(key)
    if hit is not None:
        return hit
    v = _exp_basis(spec, m, k, s).scale(p.mu**m)
    if correction and spec.induced:
        v = v - InducedElement.basis(k + 1, s, spec.dim)
    hit = tuple(v.items())
    spec._cache[key] = hit
    return hit


def _accumulate(out: dict, key, coeffs, c=None):
    acc = out.get(key)
    if acc is None:
        acc = out[key] = []
    if len(acc) < len(coeffs):
        acc.extend([ZERO] * (len(coeffs) - len(acc)))
    if c is None:
        for i, x in enumerate(coeffs):
            acc[i] = acc[i] + x
    else:
        for i, x in enumerate(coeffs):
            acc[i] = acc[i] + x * c


def _finish(out: dict) -> TensorElement:
    blocks = {}
    for key, acc in out.items():
        coeffs = _trim(acc)
        if coeffs:
            blocks[key] = Poly._raw(coeffs)
    return TensorElement.from_blocks(blocks)


def _action(p: TensorParams, spec: BModuleSpec, m: int, x: TensorElement, correction: bool) -> TensorElement:
    lam_m = p.lambda_pow(m)
    lin = -(p.alpha * m)
    out: dict = {}
    for (k, s), f in x.blocks.items():
        g = f.shift(m).scale(lam_m)
        _accumulate(out, (k, s), g.mul_linear(lin).coeffs)
        for k2, s2, c in _second_vector(p, spec, m, k, s, correction):
            _accumulate(out, (k2, s2), g.coeffs, c)
    return _finish(out)


def l_action(p: TensorParams, spec: BModuleSpec, m: int, x: TensorElement) -> TensorElement:
    """``L_m x`` in M(V, mu, Omega(lambda, alpha))."""
    return _action(p, spec, m, x, correction=True)


def central_action(x: TensorElement) -> TensorElement:
    return TensorElement.zero()


@dataclass(frozen=True)
class FModuleView:
    """F(M, Omega(lambda, alpha)) for a B-module M: elements have ``k = 0``."""

    omega: OmegaParams
    spec: BModuleSpec

    @property
    def params(self) -> TensorParams:
        return TensorParams(ONE, self.omega)


def f_action(view: FModuleView, m: int, x: TensorElement) -> TensorElement:
    """``L_m`` on F(M, Omega): ``v (x) x_m (d - m alpha) f + sum_{i>=1} m^i/i! L_{i-1} v (x) x_m f``.

    Computed straight from the B-matrices, independently of the induction
    machinery in :func:`l_action`.
    """
    if any(k for k, _ in x.blocks):
        raise ValueError("F(M, Omega) elements must not involve L_-1")
    spec, om = view.spec, view.omega
    lam_m = om.lambda_**m
    lin = -(om.alpha * m)
    mq = as_scalar(m)
    weights = [mq**i / factorial(i) for i in range(1, spec.order + 2)]
    out: dict = {}
    for (_, s), f in x.blocks.items():
        g = f.shift(m).scale(lam_m)
        _accumulate(out, (0, s), g.mul_linear(lin).coeffs)
        e_s = tuple(ONE if a == s else ZERO for a in range(spec.dim))
        w = [ZERO] * spec.dim
        for i, wt in enumerate(weights, start=1):
            if wt:
                for a, c in enumerate(spec.act(i - 1, e_s)):
                    w[a] = w[a] + c * wt
        for a, c in enumerate(w):
            if c:
                _accumulate(out, (0, a), g.coeffs, c)
    return _finish(out)


def parse_word(text: str) -> list:
    """``"[1, -1, C]"`` -> ``[1, -1, "C"]``."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"word must be a bracketed list, got {text!r}")
    out: list = []
    for tok in body[1:-1].split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok == "C":
            out.append("C")
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise ValueError(f"bad generator {tok!r} in word") from None
    return out


def apply_word(p: TensorParams, spec: BModuleSpec, word, x: TensorElement) -> TensorElement:
    """Act by the product ``g_0 g_1 ... g_{r-1}``: the rightmost letter acts first."""
    for g in reversed(list(word)):
        if g == "C":
            x = central_action(x)
        else:
            x = l_action(p, spec, int(g), x)
    return x

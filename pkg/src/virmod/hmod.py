"""Finite-dimensional B-modules and the induced a-modules C[L_-1] (x) V_B.

Generators are indexed as ``L_i`` with bracket ``[L_i, L_j] = (j - i) L_{i+j}``.
``a`` is spanned by ``L_i`` for ``i >= -1`` and ``B`` by ``L_i`` for ``i >= 0``.
A B-module is given by matrices ``M_0..M_r`` acting on column vectors; it is
induced to ``a`` by letting ``L_-1`` act freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import ONE, ZERO, GaussianRational, as_scalar, binomial, factorial

__all__ = [
    "BModuleSpec",
    "InducedElement",
    "h_action",
    "order",
    "annihilated_by_b",
    "exp_derivation",
    "check_exp_shift_identity",
    "bracket_check_h",
]


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n)) for i in range(n)
    )


def _zero_matrix(d):
    return tuple((ZERO,) * d for _ in range(d))


def _is_zero_matrix(a) -> bool:
    return not any(x for row in a for x in row)


def _matrix_rank(a) -> int:
    rows = [list(r) for r in a]
    rank, n_cols = 0, len(rows[0]) if rows else 0
    for c in range(n_cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True, eq=False)
class BModuleSpec:
    """A ``dim``-dimensional B-module where ``L_i`` acts by ``matrices[i]``.

    ``L_i`` acts by zero for ``i > order``.  ``induced=False`` is only allowed
    for the zero action and models the trivial a-module (``L_-1`` acts by zero
    as well); otherwise the module is induced and ``L_-1`` acts freely.
    """

    dim: int
    order: int
    matrices: tuple
    induced: bool = True
    kind: str = "matrices"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        d, r = self.dim, self.order
        if not isinstance(d, int) or d < 1:
            raise ValueError("dim must be a positive integer")
        if not isinstance(r, int) or r < 0:
            raise ValueError("order must be a nonnegative integer")
        if len(self.matrices) != r + 1:
            raise ValueError(f"expected {r + 1} matrices L_0..L_{r}, got {len(self.matrices)}")
        mats = []
        for idx, m in enumerate(self.matrices):
            if len(m) != d or any(len(row) != d for row in m):
                raise ValueError(f"matrix L_{idx} must be {d}x{d}")
            mats.append(tuple(tuple(as_scalar(x) for x in row) for row in m))
        object.__setattr__(self, "matrices", tuple(mats))
        if r > 0 and _is_zero_matrix(mats[r]):
            raise ValueError(f"declared order {r} but L_{r} acts by zero")
        if not self.induced and not self.is_trivial:
            raise ValueError("a non-induced module must have the zero B-action")
        zero = _zero_matrix(d)
        for i in range(r + 1):
            for j in range(i + 1, r + 1):
                lhs = _matmul(mats[i], mats[j])
                rhs_ = _matmul(mats[j], mats[i])
                target = mats[i + j] if i + j <= r else zero
                c = j - i
                for a in range(d):
                    for b in range(d):
                        if lhs[a][b] - rhs_[a][b] != target[a][b] * c:
                            raise ValueError(
                                f"bracket [L_{i}, L_{j}] = {c} L_{i + j} violated by the matrices"
                            )
        object.__setattr__(self, "_key", (d, r, tuple(mats), self.induced))

    def __eq__(self, other):
        if not isinstance(other, BModuleSpec):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @classmethod
    def highest_weight(cls, beta) -> BModuleSpec:
        return cls(1, 0, (((as_scalar(beta),),),), kind="highest_weight")

    @classmethod
    def trivial(cls, dim: int = 1, induced: bool = True) -> BModuleSpec:
        return cls(dim, 0, (_zero_matrix(dim),), induced=induced, kind="trivial")

    @classmethod
    def from_matrices(cls, dim: int, order: int, matrices) -> BModuleSpec:
        return cls(dim, order, tuple(matrices))

    @classmethod
    def from_config(cls, obj) -> BModuleSpec:
        """Build from ``{"kind": "highest_weight", "beta": "2"}`` and friends.

        Raises ``ValueError`` whose message starts with the offending key.
        """
        if not isinstance(obj, dict):
            raise ValueError("vb: expected an object")
        kind = obj.get("kind")
        if kind == "highest_weight":
            if "beta" not in obj:
                raise ValueError("vb.beta: missing")
            try:
                return cls.highest_weight(as_scalar(obj["beta"]))
            except (TypeError, ValueError) as exc:
                raise ValueError(f"vb.beta: {exc}") from None
        if kind == "trivial":
            dim = obj.get("dim", 1)
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
                raise ValueError("vb.dim: expected a positive integer")
            induced = obj.get("induced", True)
            if not isinstance(induced, bool):
                raise ValueError("vb.induced: expected a boolean")
            return cls.trivial(dim, induced)
        if kind == "matrices":
            for key in ("dim", "order", "L"):
                if key not in obj:
                    raise ValueError(f"vb.{key}: missing")
            dim, order, mats = obj["dim"], obj["order"], obj["L"]
            if not isinstance(dim, int) or not isinstance(order, int):
                raise ValueError("vb.dim: dim and order must be integers")
            if not isinstance(mats, list):
                raise ValueError("vb.L: expected a list of matrices")
            parsed = []
            for idx, m in enumerate(mats):
                try:
                    parsed.append(tuple(tuple(as_scalar(x) for x in row) for row in m))
                except (TypeError, ValueError) as exc:
                    raise ValueError(f"vb.L[{idx}]: {exc}") from None
            try:
                return cls(dim, order, tuple(parsed))
            except ValueError as exc:
                raise ValueError(f"vb.L: {exc}") from None
        raise ValueError(f"vb.kind: unknown kind {kind!r}")

    def to_config(self) -> dict:
        if self.kind == "highest_weight":
            return {"kind": "highest_weight", "beta": str(self.beta)}
        if self.kind == "trivial":
            out = {"kind": "trivial", "dim": self.dim}
            if not self.induced:
                out["induced"] = False
            return out
        return {
            "kind": "matrices",
            "dim": self.dim,
            "order": self.order,
            "L": [[[str(x) for x in row] for row in m] for m in self.matrices],
        }

    @property
    def is_trivial(self) -> bool:
        return all(_is_zero_matrix(m) for m in self.matrices)

    @property
    def is_highest_weight(self) -> bool:
        # A 1-dim B-module is a character: L_i (i >= 1) must act by zero.
        return self.dim == 1 and self.order == 0 and self.induced

    @property
    def beta(self) -> GaussianRational:
        if not self.is_highest_weight:
            raise ValueError("only highest-weight specs carry a weight")
        return self.matrices[0][0][0]

    def top_invertible(self) -> bool:
        return _matrix_rank(self.matrices[self.order]) == self.dim

    def twisted(self, c) -> BModuleSpec:
        """The same module with ``L_0`` replaced by ``L_0 + c``."""
        c = as_scalar(c)
        m0 = tuple(
            tuple(x + c if a == b else x for b, x in enumerate(row))
            for a, row in enumerate(self.matrices[0])
        )
        kind = self.kind if self.kind == "highest_weight" else "matrices"
        return BModuleSpec(self.dim, self.order, (m0,) + self.matrices[1:], kind=kind)

    def act(self, i: int, vec) -> tuple:
        """``L_i`` (``i >= 0``) on a coordinate vector of V_B."""
        d = self.dim
        if i > self.order:
            return (ZERO,) * d
        m = self.matrices[i]
        return tuple(sum((m[a][b] * vec[b] for b in range(d) if vec[b]), ZERO) for a in range(d))

    def describe(self) -> dict:
        return self.to_config()


class InducedElement:
    """Element ``sum_k L_-1^k (x) w_k`` of ``C[L_-1] (x) V_B``.

    ``terms`` maps the exponent ``k`` to a coordinate tuple ``w_k``; zero
    vectors are never stored.
    """

    __slots__ = ("terms", "dim")

    def __init__(self, terms=None, dim: int = 1):
        self.dim = dim
        clean = {}
        for k, vec in (terms or {}).items():
            vec = tuple(as_scalar(x) for x in vec)
            if len(vec) != dim:
                raise ValueError("vector length does not match dim")
            if k < 0:
                raise ValueError("negative L_-1 exponent")
            if any(vec):
                clean[k] = vec
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, dim: int) -> InducedElement:
        x = object.__new__(cls)
        x.terms = terms
        x.dim = dim
        return x

    @classmethod
    def basis(cls, k: int, s: int = 0, dim: int = 1, c=ONE) -> InducedElement:
        vec = [ZERO] * dim
        vec[s] = as_scalar(c)
        return cls({k: vec}, dim)

    @classmethod
    def zero(cls, dim: int = 1) -> InducedElement:
        return cls._raw({}, dim)

    def items(self):
        """Yield ``(k, s, coefficient)`` over nonzero coordinates."""
        for k in sorted(self.terms):
            for s, c in enumerate(self.terms[k]):
                if c:
                    yield k, s, c

    @property
    def max_exponent(self) -> int:
        return max(self.terms) if self.terms else -1

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, InducedElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: InducedElement) -> InducedElement:
        out = dict(self.terms)
        for k, vec in other.terms.items():
            if k in out:
                new = tuple(a + b for a, b in zip(out[k], vec))
                if any(new):
                    out[k] = new
                else:
                    del out[k]
            else:
                out[k] = vec
        return InducedElement._raw(out, self.dim)

    def __neg__(self) -> InducedElement:
        return InducedElement._raw({k: tuple(-x for x in v) for k, v in self.terms.items()}, self.dim)

    def __sub__(self, other: InducedElement) -> InducedElement:
        return self + (-other)

    def scale(self, c) -> InducedElement:
        c = as_scalar(c)
        if not c:
            return InducedElement.zero(self.dim)
        return InducedElement._raw({k: tuple(x * c for x in v) for k, v in self.terms.items()}, self.dim)

    def raise_exponent(self, by: int = 1) -> InducedElement:
        """Multiply by ``L_-1^by`` in the free (induced) structure."""
        return InducedElement._raw({k + by: v for k, v in self.terms.items()}, self.dim)

    def __repr__(self):
        parts = [f"L-1^{k} e_{s} * {c}" for k, s, c in self.items()]
        return "InducedElement(" + (" + ".join(parts) or "0") + ")"


def _h_basis(spec: BModuleSpec, i: int, k: int, s: int) -> InducedElement:
    """``L_i L_-1^k e_s`` in normal order, memoised on ``spec``."""
    key = ("h", i, k, s)
    cache = spec._cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    d = spec.dim
    if i == -1:
        result = InducedElement.basis(k + 1, s, d) if spec.induced else InducedElement.zero(d)
    elif k == 0:
        col = tuple(spec.matrices[i][a][s] for a in range(d)) if i <= spec.order else ()
        result = InducedElement({0: col}, d) if any(col) else InducedElement.zero(d)
    else:
        # L_i L_-1 = L_-1 L_i + (-1 - i) L_{i-1}
        head = _h_basis(spec, i, k - 1, s).raise_exponent()
        tail = _h_basis(spec, i - 1, k - 1, s).scale(-1 - i)
        result = head + tail
    cache[key] = result
    return result


def h_action(spec: BModuleSpec, i: int, x: InducedElement) -> InducedElement:
    if i < -1:
        raise ValueError(f"L_{i} is not in the subalgebra a (index must be >= -1)")
    out = InducedElement.zero(spec.dim)
    for k, s, c in x.items():
        out = out + _h_basis(spec, i, k, s).scale(c)
    return out


def _order_bound(spec: BModuleSpec, x: InducedElement) -> int:
    return max(x.max_exponent, 0) + spec.order


def order(spec: BModuleSpec, x: InducedElement) -> int:
    """Least ``r >= 0`` with ``L_j x = 0`` for every ``j > r``.

    For vectors killed by all of B this is 0; use :func:`annihilated_by_b`
    to tell that case apart.
    """
    if x.is_zero():
        raise ValueError("order of the zero vector is undefined")
    for j in range(_order_bound(spec, x), -1, -1):
        if h_action(spec, j, x):
            return j
    return 0


def annihilated_by_b(spec: BModuleSpec, x: InducedElement) -> bool:
    return not any(h_action(spec, j, x) for j in range(_order_bound(spec, x) + 1))


def _basis_order(spec: BModuleSpec, k: int, s: int) -> int:
    key = ("ord", k, s)
    hit = spec._cache.get(key)
    if hit is None:
        hit = order(spec, InducedElement.basis(k, s, spec.dim))
        spec._cache[key] = hit
    return hit


def _exp_basis(spec: BModuleSpec, m: int, k: int, s: int, extra_terms: int = 0) -> InducedElement:
    key = ("exp", m, k, s)
    if not extra_terms:
        hit = spec._cache.get(key)
        if hit is not None:
            return hit
    mq = as_scalar(m)
    out = InducedElement.zero(spec.dim)
    for i in range(_basis_order(spec, k, s) + 2 + extra_terms):
        coeff = mq**i / factorial(i)
        if coeff:
            out = out + _h_basis(spec, i - 1, k, s).scale(coeff)
    if not extra_terms:
        spec._cache[key] = out
    return out


def exp_derivation(spec: BModuleSpec, m: int, x: InducedElement, extra_terms: int = 0) -> InducedElement:
    """``e^{mt} d/dt = sum_i m^i/i! L_{i-1}`` applied to ``x``.

    The series is cut after ``i = ord + 1`` separately for every basis
    monomial of ``x``; all later terms vanish.  ``extra_terms`` lengthens
    the cut, which must not change the result.
    """
    out = InducedElement.zero(spec.dim)
    for k, s, c in x.items():
        out = out + _exp_basis(spec, m, k, s, extra_terms).scale(c)
    return out


def l_minus_power(spec: BModuleSpec, p: int, x: InducedElement) -> InducedElement:
    for _ in range(p):
        x = h_action(spec, -1, x)
    return x


def check_exp_shift_identity(spec: BModuleSpec, k: int, i: int, x: InducedElement) -> bool:
    """Compare ``E_k L_-1^i x`` with ``(L_-1 - k)^i E_k x`` where ``E_k = e^{kt} d/dt``."""
    lhs = exp_derivation(spec, k, l_minus_power(spec, i, x))
    ex = exp_derivation(spec, k, x)
    rhs = InducedElement.zero(spec.dim)
    neg_k = as_scalar(-k)
    for p in range(i + 1):
        rhs = rhs + l_minus_power(spec, p, ex).scale(binomial(i, p) * neg_k ** (i - p))
    return lhs == rhs


def bracket_check_h(spec: BModuleSpec, i: int, j: int, x: InducedElement) -> bool:
    lhs = h_action(spec, i, h_action(spec, j, x)) - h_action(spec, j, h_action(spec, i, x))
    if i + j < -1:
        # Only i = j = -1 gets here, where (j - i) = 0.
        rhs = InducedElement.zero(spec.dim)
    else:
        rhs = h_action(spec, i + j, x).scale(j - i)
    return lhs == rhs

"""Isomorphisms between the modules, and onto a tensor product of two Omegas."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..hmod import BModuleSpec
from ..linalg import SpanBasis
from ..omega import OmegaParams, omega_action
from ..poly import Poly, j_basis
from ..report import Case, VerifyReport
from ..scalar import ONE, ZERO, as_scalar, binomial
from ..tensor import TensorElement, TensorParams, l_action
from .window import TruncationWindow

ISO_WINDOW = TruncationWindow(k_max=4, n_max=4, m_lo=-4, m_hi=4)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


# -- the map phi between highest-weight modules ------------------------------


def _phi_params(mu, lambda_, alpha1, alpha2):
    mu, lambda_ = as_scalar(mu), as_scalar(lambda_)
    alpha1, alpha2 = as_scalar(alpha1), as_scalar(alpha2)
    _require(bool(mu) and mu != ONE, "mu must be nonzero and different from 1")
    _require(bool(lambda_), "lambda must be nonzero")
    _require(bool(alpha1) and bool(alpha2), "alpha1 and alpha2 must be nonzero")
    src = TensorParams.of(mu, lambda_, alpha1)
    dst = TensorParams.of(mu.inverse(), mu * lambda_, alpha2)
    return src, BModuleSpec.highest_weight(-alpha2), dst, BModuleSpec.highest_weight(-alpha1)


def phi(x: TensorElement) -> TensorElement:
    """``L_-1^i v1 (x) f`` -> ``sum_p (-1)^p C(i,p) L_-1^p v2 (x) d^(i-p) f``."""
    out: dict = {}
    for (i, s), f in x.blocks.items():
        for p in range(i + 1):
            c = binomial(i, p) if p % 2 == 0 else -binomial(i, p)
            term = Poly._raw((ZERO,) * (i - p) + f.coeffs).scale(c)
            out[(p, s)] = out[(p, s)] + term if (p, s) in out else term
    return TensorElement.from_blocks(out)


def _linear_power(c, e: int) -> Poly:
    """``(d + c)^e``."""
    out = Poly.ONE
    for _ in range(e):
        out = out.mul_linear(c)
    return out


def phi_shifted_expansion(i: int, n: int, k: int) -> TensorElement:
    """``sum_p (-1)^p C(i,p) (L_-1 - n)^p v2 (x) (d - n)^(i-p) J_n^k``."""
    out = TensorElement.zero()
    neg_n = as_scalar(-n)
    for p in range(i + 1):
        c = binomial(i, p) if p % 2 == 0 else -binomial(i, p)
        f = (_linear_power(neg_n, i - p) * j_basis(n, k)).scale(c)
        for q in range(p + 1):
            out = out + TensorElement.from_blocks({(q, 0): f.scale(binomial(p, q) * neg_n ** (p - q))})
    return out


def _total_degree_basis(total: int, dim: int = 1) -> list[TensorElement]:
    return [
        TensorElement.monomial(i, s, j)
        for i in range(total + 1)
        for s in range(dim)
        for j in range(total + 1 - i)
    ]


def _bijective_on_total_degree(mapping, total: int, leading) -> tuple[bool, str]:
    """Degree-preserving map is triangular with unit-modulus diagonal and full rank."""
    basis = _total_degree_basis(total)
    images = [mapping(b) for b in basis]
    for b, y in zip(basis, images):
        ((i, _, j), _), = b.items()
        if any(k + n > total for (k, _, n) in y.terms()):
            return False, f"image of {b} leaves total degree <= {total}"
        lead_key, lead_c = leading(i, j)
        if y.terms().get(lead_key) != lead_c:
            return False, f"unexpected diagonal entry for {b}"
    rank = SpanBasis(images).rank
    return rank == len(basis), f"rank {rank} of {len(basis)} on total degree <= {total}"


def check_phi(mu, lambda_, alpha1, alpha2, window: TruncationWindow = ISO_WINDOW) -> VerifyReport:
    src, spec1, dst, spec2 = _phi_params(mu, lambda_, alpha1, alpha2)
    report = VerifyReport(
        "phi",
        {
            "mu": str(src.mu),
            "lambda": str(src.lambda_),
            "alpha1": str(src.alpha),
            "alpha2": str(dst.alpha),
            "window": window.as_dict(),
        },
    )
    basis = [
        TensorElement.from_blocks({(i, 0): j_basis(0, k)})
        for i in range(window.k_max + 1)
        for k in range(window.n_max + 1)
    ]
    for n in window.m_values:
        bad = next(
            (x for x in basis if phi(l_action(src, spec1, n, x)) != l_action(dst, spec2, n, phi(x))),
            None,
        )
        report.add(
            f"phi intertwines L_{n}",
            bad is None,
            None if bad is None else f"fails on {bad}",
            None if bad is None else bad.to_json(),
        )
    bad = None
    for n in window.m_values:
        for i in range(window.k_max + 1):
            for k in range(window.n_max + 1):
                x = TensorElement.from_blocks({(i, 0): j_basis(n, k)})
                if phi(x) != phi_shifted_expansion(i, n, k):
                    bad = bad or x
    report.add(
        "phi(L_-1^i v1 (x) J_n^k) shifted expansion",
        bad is None,
        None if bad is None else f"fails on {bad}",
        None if bad is None else bad.to_json(),
    )
    total = window.k_max + window.n_max
    ok, detail = _bijective_on_total_degree(
        phi, total, lambda i, j: ((i, 0, j), ONE if i % 2 == 0 else -ONE)
    )
    report.add("phi bijective on the window", ok, detail)
    return report


# -- classification ------------------------------------------------------------


class IsoKind(str, enum.Enum):
    CASE_A = "IsomorphicCaseA"
    CASE_B = "IsomorphicCaseB"
    NOT_ISOMORPHIC = "NotIsomorphic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IsoVerdict:
    kind: IsoKind
    conditions: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verdict": self.kind.value, "conditions": self.conditions}

    def __str__(self):
        return self.kind.value


def _check_hypotheses(p: TensorParams, spec: BModuleSpec, label: str):
    _require(p.mu != ONE, f"{label}: mu must differ from 1")
    _require(bool(p.alpha), f"{label}: alpha must be nonzero")
    _require(spec.induced, f"{label}: V must be a nontrivial a-module")


def classify_iso(p1: TensorParams, spec1: BModuleSpec, p2: TensorParams, spec2: BModuleSpec) -> IsoVerdict:
    """Decide whether M(V1, mu1, Omega(lambda1, alpha1)) and M(V2, ...) are isomorphic.

    Isomorphic iff either the triples agree and the B-modules are
    isomorphic, or ``mu1 = 1/mu2 = lambda2/lambda1`` with both modules of
    highest weight, ``V1`` of weight ``-alpha2`` and ``V2`` of weight
    ``-alpha1``.  B-module isomorphism is decided for 1-dimensional specs
    (and for literally equal matrices); otherwise the verdict is Unknown.
    """
    _check_hypotheses(p1, spec1, "first module")
    _check_hypotheses(p2, spec2, "second module")
    same_triple = (p1.mu, p1.lambda_, p1.alpha) == (p2.mu, p2.lambda_, p2.alpha)
    cond = {
        "triples_equal": same_triple,
        "mu1": str(p1.mu),
        "mu2": str(p2.mu),
        "lambda2/lambda1": str(p2.lambda_ / p1.lambda_),
    }
    if same_triple:
        if spec1.dim != spec2.dim:
            return IsoVerdict(IsoKind.NOT_ISOMORPHIC, {**cond, "reason": "dimensions of V_B differ"})
        if spec1 == spec2:
            return IsoVerdict(IsoKind.CASE_A, {**cond, "vb_isomorphic": True})
        if spec1.dim == 1:
            return IsoVerdict(
                IsoKind.NOT_ISOMORPHIC, {**cond, "vb_isomorphic": False, "reason": "different weights"}
            )
        return IsoVerdict(IsoKind.UNKNOWN, {**cond, "reason": "matrix B-modules of dim > 1"})
    case_b = p1.mu == p2.mu.inverse() and p1.mu == p2.lambda_ / p1.lambda_
    cond["mu1 = 1/mu2 = lambda2/lambda1"] = case_b
    if case_b and spec1.is_highest_weight and spec2.is_highest_weight:
        weights_ok = spec1.beta == -p2.alpha and spec2.beta == -p1.alpha
        cond["weights (-alpha2, -alpha1)"] = weights_ok
        if weights_ok:
            return IsoVerdict(IsoKind.CASE_B, cond)
    return IsoVerdict(IsoKind.NOT_ISOMORPHIC, cond)


# -- the map psi onto Omega(1, alpha) (x) Omega(mu, -beta) ---------------------


class PairElement:
    """Element ``sum c * d^a (x) d^b`` of a tensor product of two Omegas."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {key: c for key, c in (terms or {}).items() if c}

    def __eq__(self, other):
        return isinstance(other, PairElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ZERO) + c
        return PairElement(out)

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"d^{a} (x) d^{b} * {c}" for (a, b), c in sorted(self.terms.items()))


def pair_action(first: OmegaParams, second: OmegaParams, m: int, x: PairElement) -> PairElement:
    out: dict = {}
    for (a, b), c in x.terms.items():
        for i, y in enumerate(omega_action(first, m, Poly.monomial(a)).coeffs):
            out[(i, b)] = out.get((i, b), ZERO) + y * c
        for j, y in enumerate(omega_action(second, m, Poly.monomial(b)).coeffs):
            out[(a, j)] = out.get((a, j), ZERO) + y * c
    return PairElement(out)


def psi(x: TensorElement) -> PairElement:
    """``L_-1^i v (x) d^j`` -> ``sum_p C(j,p) d^(j-p) (x) d^(i+p)`` (third factor trivial)."""
    out: dict = {}
    for (i, _, j), c in x.items():
        for p in range(j + 1):
            key = (j - p, i + p)
            out[key] = out.get(key, ZERO) + binomial(j, p) * c
    return PairElement(out)


def _psi_failure(src, spec, first, second, m, basis):
    for x in basis:
        lhs = psi(l_action(src, spec, m, x))
        rhs = pair_action(first, second, m, psi(x))
        if lhs != rhs:
            return x
    return None


def check_psi(
    mu, alpha, beta, window: TruncationWindow = ISO_WINDOW, wrong_beta=None
) -> VerifyReport:
    """psi intertwines M(V, mu, Omega(1, alpha)) with Omega(1, alpha) (x) Omega(mu, -beta) (x) C.

    ``V`` has highest weight ``beta``.  A negative control repeats the check
    against ``Omega(mu, -wrong_beta)`` (default ``beta + 1``), which must fail.
    """
    mu, alpha, beta = as_scalar(mu), as_scalar(alpha), as_scalar(beta)
    _require(bool(mu) and mu != ONE, "mu must be nonzero and different from 1")
    _require(bool(alpha), "alpha must be nonzero")
    wrong_beta = beta + ONE if wrong_beta is None else as_scalar(wrong_beta)
    _require(wrong_beta != beta, "wrong_beta must differ from beta")
    src = TensorParams.of(mu, 1, alpha)
    spec = BModuleSpec.highest_weight(beta)
    first, second = OmegaParams(1, alpha), OmegaParams(mu, -beta)
    report = VerifyReport(
        "psi",
        {"mu": str(mu), "alpha": str(alpha), "beta": str(beta), "window": window.as_dict()},
    )
    basis = [
        TensorElement.monomial(i, 0, j) for i in range(window.k_max + 1) for j in range(window.n_max + 1)
    ]
    for m in window.m_values:
        bad = _psi_failure(src, spec, first, second, m, basis)
        report.add(
            f"psi intertwines L_{m}",
            bad is None,
            None if bad is None else f"fails on {bad}",
            None if bad is None else bad.to_json(),
        )
    total = window.k_max + window.n_max
    basis_t = _total_degree_basis(total)
    images = [psi(b) for b in basis_t]
    cols = SpanBasis({(a, b): c for (a, b), c in y.terms.items()} for y in images)
    report.add(
        "psi injective on the window",
        cols.rank == len(basis_t),
        f"rank {cols.rank} of {len(basis_t)} on total degree <= {total}",
    )
    wrong = OmegaParams(mu, -wrong_beta)
    witness = None
    for m in window.m_values:
        witness = _psi_failure(src, spec, first, wrong, m, basis)
        if witness is not None:
            break
    name = f"negative control: target Omega(mu, {-wrong_beta}) is not intertwined"
    if witness is None:
        report.add(name, False, "no failure found")
    else:
        report.cases.append(Case(name, True, f"fails at m = {m} on {witness}", witness.to_json()))
    return report

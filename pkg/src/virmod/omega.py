"""The Virasoro module Omega(lambda, alpha) = C[d].

``L_m f(d) = lambda^m (d - m*alpha) f(d - m)`` and the central element acts
by zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import ZERO_POLY, Poly
from .report import VerifyReport
from .scalar import GaussianRational, as_scalar


@dataclass(frozen=True)
class OmegaParams:
    lambda_: GaussianRational
    alpha: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "lambda_", as_scalar(self.lambda_))
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        if not self.lambda_:
            raise ValueError("lambda must be nonzero")

    def as_dict(self) -> dict:
        return {"lambda": str(self.lambda_), "alpha": str(self.alpha)}


def shift_scale(p: OmegaParams, m: int, f: Poly) -> Poly:
    """The operator ``x_m f = lambda^m f(d - m)``."""
    return f.shift(m).scale(p.lambda_**m)


def omega_action(p: OmegaParams, m: int, f: Poly) -> Poly:
    return shift_scale(p, m, f).mul_linear(-(p.alpha * m))


def omega_central(f: Poly) -> Poly:
    return ZERO_POLY


def alpha_zero_submodule_check(p: OmegaParams, m_range=(-4, 4), deg_bound: int = 6) -> VerifyReport:
    """Check that ``d*C[d]`` is stable under every ``L_m`` when alpha = 0."""
    if p.alpha:
        raise ValueError("alpha_zero_submodule_check needs alpha = 0")
    report = VerifyReport(
        "omega-alpha0",
        {**p.as_dict(), "m_range": list(m_range), "deg_bound": deg_bound},
    )
    lo, hi = m_range
    for m in range(lo, hi + 1):
        bad = None
        for j in range(deg_bound + 1):
            image = omega_action(p, m, Poly.monomial(j + 1))
            if not image.divisible_by_d():
                bad = (j, image)
                break
        detail = None if bad is None else f"L_{m}(d^{bad[0] + 1}) = {bad[1]}"
        report.add(f"L_{m} preserves d*C[d]", bad is None, detail)
    return report

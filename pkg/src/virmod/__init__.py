"""Exact computations in non-weight Virasoro modules M(V, mu, Omega(lambda, alpha))."""

from .hmod import BModuleSpec, InducedElement
from .linalg import SpanBasis
from .omega import OmegaParams
from .poly import Poly
from .report import VerifyReport
from .scalar import GaussianRational
from .tensor import TensorElement, TensorParams, l_action

__all__ = [
    "BModuleSpec",
    "GaussianRational",
    "InducedElement",
    "OmegaParams",
    "Poly",
    "SpanBasis",
    "TensorElement",
    "TensorParams",
    "VerifyReport",
    "l_action",
]
__version__ = "0.1.0"

"""Verification suites; each returns a :class:`~virmod.report.VerifyReport`."""

from .bracket import check_bracket
from .filtration import check_filtration, check_tau, quotient_intertwiner_search
from .induced import check_eq_extra, check_ord
from .iso import IsoKind, IsoVerdict, check_phi, check_psi, classify_iso
from .probe import simplicity_probe
from .window import TruncationWindow

__all__ = [
    "IsoKind",
    "IsoVerdict",
    "TruncationWindow",
    "check_bracket",
    "check_eq_extra",
    "check_filtration",
    "check_ord",
    "check_phi",
    "check_psi",
    "check_tau",
    "classify_iso",
    "quotient_intertwiner_search",
    "simplicity_probe",
]

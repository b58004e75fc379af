"""Suites on the induced module C[L_-1] (x) V_B alone."""

from __future__ import annotations

import random

from ..hmod import BModuleSpec, InducedElement, check_exp_shift_identity, order
from ..report import VerifyReport
from .window import SAMPLE_COEFFS


def random_induced(rng: random.Random, spec: BModuleSpec, k_max: int = 3) -> InducedElement:
    while True:
        terms = {k: tuple(rng.choice(SAMPLE_COEFFS) for _ in range(spec.dim)) for k in range(k_max + 1)}
        x = InducedElement(terms, spec.dim)
        if x:
            return x


def check_eq_extra(
    spec: BModuleSpec, k_lo: int = -3, k_hi: int = 3, i_max: int = 4, samples: int = 5, seed: int = 0
) -> VerifyReport:
    """``E_k L_-1^i = (L_-1 - k)^i E_k`` on basis vectors and random elements."""
    rng = random.Random(seed)
    xs = [InducedElement.basis(k, s, spec.dim) for k in range(3) for s in range(spec.dim)]
    xs += [random_induced(rng, spec) for _ in range(samples)]
    report = VerifyReport(
        "eq-extra",
        {"vb": spec.to_config(), "k_range": [k_lo, k_hi], "i_max": i_max, "samples": samples, "seed": seed},
    )
    for k in range(k_lo, k_hi + 1):
        for i in range(i_max + 1):
            bad = next((x for x in xs if not check_exp_shift_identity(spec, k, i, x)), None)
            report.add(
                f"E_{k} L_-1^{i} = (L_-1 - {k})^{i} E_{k}",
                bad is None,
                None if bad is None else f"fails on {bad!r}",
            )
    return report


def check_ord(spec: BModuleSpec, k_max: int = 6) -> VerifyReport:
    """``ord(L_-1^k v) = k + ord(v)`` for the basis of V_B (needs an invertible top matrix)."""
    report = VerifyReport("ord", {"vb": spec.to_config(), "k_max": k_max})
    if not spec.induced:
        report.add("ord additivity", True, "V is trivial; not applicable")
        return report
    if not spec.top_invertible():
        measured = [order(spec, InducedElement.basis(k, 0, spec.dim)) for k in range(k_max + 1)]
        report.add(
            "ord additivity hypothesis",
            True,
            f"top matrix not invertible, additivity not asserted; measured {measured}",
        )
        return report
    for s in range(spec.dim):
        base = order(spec, InducedElement.basis(0, s, spec.dim))
        for k in range(k_max + 1):
            got = order(spec, InducedElement.basis(k, s, spec.dim))
            report.add(
                f"ord(L_-1^{k} e_{s}) = {k} + {base}",
                got == k + base,
                f"got {got}",
            )
    return report

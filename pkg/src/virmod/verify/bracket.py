"""Virasoro bracket law on M(V, mu, Omega(lambda, alpha)) over random samples."""

from __future__ import annotations

import random

from ..hmod import BModuleSpec
from ..report import Case, VerifyReport
from ..scalar import GaussianRational
from ..tensor import TensorElement, TensorParams, _action, central_action, l_action
from .window import TruncationWindow, random_element


def uncorrected_action(p: TensorParams, spec: BModuleSpec, m: int, x: TensorElement) -> TensorElement:
    """Deliberately wrong action: ``mu^m E_m`` without the ``- L_-1`` correction."""
    return _action(p, spec, m, x, correction=False)


def _combine(x: TensorElement, per_monomial: dict) -> TensorElement:
    out = TensorElement.zero()
    for mon, c in x.terms().items():
        d = per_monomial[mon]
        if d:
            out = out + d.scale(c)
    return out


class _BracketEngine:
    """Bracket defect ``[L_m, L_n] x - (n-m) L_{m+n} x - central term``.

    The defect is linear in ``x``; it is computed once per basis monomial in
    the samples' support and each sample's defect is the matching linear
    combination.  Images ``L_j b`` are memoised per monomial.
    """

    def __init__(self, p, spec, action):
        self.p, self.spec, self.action = p, spec, action
        self._img: dict = {}

    def image(self, j: int, mon) -> TensorElement:
        key = (j, mon)
        hit = self._img.get(key)
        if hit is None:
            hit = self._img[key] = self.action(self.p, self.spec, j, TensorElement.monomial(*mon))
        return hit

    def defect(self, m: int, n: int, mon) -> TensorElement:
        act, p, spec = self.action, self.p, self.spec
        lhs = act(p, spec, m, self.image(n, mon)) - act(p, spec, n, self.image(m, mon))
        rhs = self.image(m + n, mon).scale(n - m)
        if m + n == 0:
            central = GaussianRational(m**3 - m, 12)
            rhs = rhs + central_action(TensorElement.monomial(*mon)).scale(central)
        return lhs - rhs


def _first_counterexample(engine, m, n, xs, support):
    per_mon = {mon: engine.defect(m, n, mon) for mon in support}
    if not any(per_mon.values()):
        return None
    for x in xs:
        d = _combine(x, per_mon)
        if d:
            return x, d
    return None


def check_bracket(
    p: TensorParams,
    spec: BModuleSpec,
    window: TruncationWindow | None = None,
    samples: int = 200,
    seed: int = 0,
    action=None,
    negative_control: bool = True,
) -> VerifyReport:
    window = window or TruncationWindow(k_max=3, n_max=3)
    action = action or l_action
    rng = random.Random(seed)
    xs = [random_element(rng, window, spec.dim) for _ in range(samples)]
    support = sorted({mon for x in xs for mon in x.terms()})
    report = VerifyReport(
        "bracket",
        {
            **p.as_dict(),
            "vb": spec.to_config(),
            "window": window.as_dict(),
            "samples": samples,
            "seed": seed,
        },
    )
    engine = _BracketEngine(p, spec, action)
    for m in window.m_values:
        for n in window.m_values:
            found = _first_counterexample(engine, m, n, xs, support)
            name = f"[L_{m}, L_{n}] = {n - m} L_{m + n}"
            if found is None:
                report.add(name, True, f"{samples} samples")
            else:
                x, d = found
                report.add(name, False, f"defect {d}", witness=x.to_json())

    if negative_control and action is l_action and spec.induced:
        bad = _BracketEngine(p, spec, uncorrected_action)
        witness = None
        for m in window.m_values:
            for n in window.m_values:
                found = _first_counterexample(bad, m, n, xs, support)
                if found is not None:
                    witness = (m, n, found[0])
                    break
            if witness:
                break
        if witness is None:
            report.add("negative control: uncorrected action rejected", False, "no violation found")
        else:
            m, n, x = witness
            name = f"negative control: uncorrected action rejected at (m, n) = ({m}, {n})"
            # The witness shows the violation, yet the case itself passes.
            report.cases.append(Case(name, True, "bracket violated as expected", x.to_json()))
    return report

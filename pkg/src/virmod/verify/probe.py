"""Finite simplicity probes: span closure inside a window.

These give evidence only.  A truncated closure that reaches a whole inner
window suggests cyclicity of the seed; an invariant proper subspace found by
the probe is a genuine submodule only once its invariance is known for all
of the module, which the candidate checks sample on a larger window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..hmod import BModuleSpec
from ..linalg import SpanBasis
from ..report import Case, VerifyReport
from ..scalar import ONE, ZERO
from ..tensor import TensorElement, TensorParams, l_action
from .filtration import tau
from .window import TruncationWindow

NOTE = "finite probe, not a proof"

PROBE_WINDOW = TruncationWindow(k_max=4, n_max=6, m_lo=-3, m_hi=3)
INNER_WINDOW = TruncationWindow(k_max=2, n_max=3, m_lo=-3, m_hi=3)


@dataclass(frozen=True)
class Candidate:
    """A subspace given by generators that depend on the window size."""

    name: str
    generators: Callable[[TruncationWindow, int], list]


def _inside(window: TruncationWindow):
    return lambda col: col[0] <= window.k_max and col[2] <= window.n_max


def _outside_first(window: TruncationWindow):
    inside = _inside(window)
    return lambda col: (inside(col), col)


def window_closure(
    p: TensorParams, spec: BModuleSpec, seed: TensorElement, window: TruncationWindow, max_rounds: int = 50
) -> tuple[SpanBasis, int]:
    """Close ``span{seed}`` under ``L_m`` (m in the window) intersected with the window.

    Each round adds ``span(W + L_m W) ∩ window``.  Columns outside the window
    sort first, so rows of the echelon form pivoting inside the window span
    exactly the intersection.  Returns the basis and the number of rounds.
    """
    inside = _inside(window)
    current = SpanBasis([seed])
    for rounds in range(1, max_rounds + 1):
        big = SpanBasis(key=_outside_first(window))
        rows = current.rows()
        for r in rows:
            big.add(r)
        for r in rows:
            x = TensorElement(r)
            for m in window.m_values:
                big.add(l_action(p, spec, m, x))
        nxt = SpanBasis(big.rows_with_pivot_in([c for c in big.pivots if inside(c)]))
        if nxt.rank == current.rank:
            return current, rounds
        current = nxt
    return current, max_rounds


def v0_candidate() -> Candidate:
    return Candidate(
        "V^(0) = V_B (x) C[d]",
        lambda w, dim: [TensorElement.monomial(0, s, j) for s in range(dim) for j in range(w.n_max + 1)],
    )


def tau_candidate() -> Candidate:
    return Candidate(
        "image of tau",
        lambda w, dim: [
            tau(TensorElement.monomial(k, s, j))
            for k in range(w.k_max)
            for s in range(dim)
            for j in range(w.n_max)
        ],
    )


def default_probe(p: TensorParams, spec: BModuleSpec):
    """Seed, candidate and expectation matching the parameter regime."""
    if p.mu == ONE:
        return TensorElement.monomial(0, 0, 0), v0_candidate(), "proper"
    if p.alpha == ZERO:
        return tau(TensorElement.monomial(0, 0, 0)), tau_candidate(), "proper"
    return TensorElement.monomial(1, 0, 1), None, "cyclic"


def _grow(w: TruncationWindow, by: int = 2) -> TruncationWindow:
    return TruncationWindow(w.k_max + by, w.n_max + by, w.m_lo, w.m_hi)


def simplicity_probe(
    p: TensorParams,
    spec: BModuleSpec,
    seed: TensorElement | None = None,
    window: TruncationWindow = PROBE_WINDOW,
    inner_window: TruncationWindow = INNER_WINDOW,
    candidate: Candidate | None = None,
    expect: str | None = None,
) -> VerifyReport:
    """Probe cyclicity of ``seed`` and invariance of a candidate subspace.

    ``expect`` is ``"cyclic"`` (closure must contain the inner window) or
    ``"proper"`` (closure must stay inside the candidate, which must be
    invariant and proper).  Defaults come from :func:`default_probe`.
    """
    if inner_window.k_max >= window.k_max or inner_window.n_max >= window.n_max:
        raise ValueError("inner window must be strictly inside the outer window")
    d_seed, d_cand, d_expect = default_probe(p, spec)
    seed = d_seed if seed is None else seed
    if candidate is None and expect is None:
        candidate = d_cand
    expect = expect or d_expect
    if expect not in ("cyclic", "proper"):
        raise ValueError("expect must be 'cyclic' or 'proper'")
    if expect == "proper" and candidate is None:
        raise ValueError("a proper-subspace probe needs a candidate")
    if not seed or not window.contains(seed):
        raise ValueError("seed must be a nonzero element of the outer window")

    report = VerifyReport(
        "probe",
        {
            **p.as_dict(),
            "vb": spec.to_config(),
            "seed": seed.to_json(),
            "window": window.as_dict(),
            "inner_window": inner_window.as_dict(),
            "expect": expect,
            "candidate": candidate.name if candidate else None,
        },
        note=NOTE,
    )
    closure, rounds = window_closure(p, spec, seed, window)
    inner = [TensorElement.monomial(*mon) for mon in inner_window.monomials(spec.dim)]
    missing = [x for x in inner if not closure.contains(x)]
    detail = (
        f"closure rank {closure.rank} after {rounds} rounds; "
        f"{len(inner) - len(missing)} of {len(inner)} inner basis vectors generated"
    )
    if expect == "cyclic":
        report.add(
            "seed generates the inner window",
            not missing,
            detail,
            missing[0].to_json() if missing else None,
        )
    if candidate is not None:
        big = _grow(window)
        cand_here = SpanBasis(candidate.generators(window, spec.dim))
        cand_big = SpanBasis(candidate.generators(big, spec.dim))
        if expect == "proper":
            outside = next((TensorElement(r) for r in closure.rows() if not cand_big.contains(r)), None)
            report.add(
                f"seed closure stays inside {candidate.name}",
                outside is None,
                detail,
                None if outside is None else outside.to_json(),
            )
        for m in window.m_values:
            bad = next(
                (TensorElement(r) for r in cand_here.rows()
                 if not cand_big.contains(l_action(p, spec, m, TensorElement(r)))),
                None,
            )
            report.add(
                f"{candidate.name} invariant under L_{m}",
                bad is None,
                None if bad is None else f"L_{m} moves {bad} out",
                None if bad is None else bad.to_json(),
            )
        total = len(window.monomials(spec.dim))
        gap = next(
            (TensorElement.monomial(*mon) for mon in inner_window.monomials(spec.dim)
             if not cand_big.contains(TensorElement.monomial(*mon))),
            None,
        )
        proper = cand_here.rank > 0 and gap is not None
        report.cases.append(
            Case(
                f"{candidate.name} is proper",
                proper,
                f"rank {cand_here.rank} of {total} in the window"
                + ("" if gap is None else f"; misses {gap}"),
                None if gap is None else gap.to_json(),
            )
        )
    return report

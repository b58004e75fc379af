"""Submodule structures: the L_-1 filtration at mu = 1 and the alpha = 0 submodule."""

from __future__ import annotations

from ..hmod import BModuleSpec
from ..linalg import SpanBasis
from ..omega import OmegaParams
from ..poly import Poly, j_basis
from ..report import Case, VerifyReport
from ..scalar import ONE, ZERO, as_scalar
from ..tensor import FModuleView, TensorElement, TensorParams, f_action, l_action
from .window import TruncationWindow

FILTRATION_WINDOW = TruncationWindow(k_max=3, n_max=5, m_lo=-3, m_hi=3)


def _layer_basis(n: int, dim: int, deg: int) -> SpanBasis:
    """Coordinate span of ``L_-1^i e_s (x) d^j`` with ``i <= n``, ``j <= deg``."""
    return SpanBasis(
        TensorElement.monomial(i, s, j) for i in range(n + 1) for s in range(dim) for j in range(deg + 1)
    )


def _top_layer(y: TensorElement, n: int) -> TensorElement:
    """Coset of ``y`` modulo the ``k < n`` part, written with ``k = 0``."""
    return TensorElement.from_blocks({(0, s): p for (k, s), p in y.blocks.items() if k == n})


def _shift_d(x: TensorElement, c) -> TensorElement:
    """``e_s (x) f(d)`` -> ``e_s (x) f(d + c)``."""
    c = as_scalar(c)
    return TensorElement.from_blocks({key: p.shift(-c) for key, p in x.blocks.items()})


def quotient_intertwiner_search(
    lambda_, alpha, spec: BModuleSpec, n: int, window: TruncationWindow = FILTRATION_WINDOW
) -> dict:
    """Test candidate maps from the layer ``V^(n) / V^(n-1)`` to F-modules.

    The coset of ``L_-1^n e_s (x) f`` is represented by ``e_s (x) f``.  A
    candidate is a target F-module plus a map on representatives; it matches
    if it commutes with every ``L_m`` in the window on ``e_s (x) J_0^k``.
    Returns ``{candidate name: bool}``; also raises if the layer is not closed.
    """
    p = TensorParams.of(1, lambda_, alpha)
    omega = p.omega
    n_q = as_scalar(n)
    candidates = {}
    for c in (-1, 0, 1):
        candidates[f"F(V_B, Omega(lambda, alpha)) with d -> d + {c}*n"] = (
            FModuleView(omega, spec),
            lambda x, c=c: _shift_d(x, c * n_q),
        )
    candidates["F(V_B, Omega(lambda, alpha + n))"] = (
        FModuleView(OmegaParams(omega.lambda_, omega.alpha + n_q), spec),
        lambda x: x,
    )
    candidates["F(V_B with L_0 -> L_0 - n, Omega(lambda, alpha))"] = (
        FModuleView(omega, spec.twisted(-n_q)),
        lambda x: x,
    )
    ok = {name: True for name in candidates}
    for s in range(spec.dim):
        for k in range(window.n_max + 1):
            rep = TensorElement.from_blocks({(0, s): j_basis(0, k)})
            lifted = TensorElement.from_blocks({(n, s): j_basis(0, k)})
            for m in window.m_values:
                y = l_action(p, spec, m, lifted)
                if y.max_k > n:
                    raise AssertionError(f"V^({n}) not closed under L_{m}")
                q = _top_layer(y, n)
                for name, (view, phi) in candidates.items():
                    if ok[name] and phi(q) != f_action(view, m, phi(rep)):
                        ok[name] = False
    return ok


def check_filtration(
    lambda_,
    alpha,
    spec: BModuleSpec,
    p_max: int = 3,
    window: TruncationWindow = FILTRATION_WINDOW,
    mu=1,
    control_mu=2,
) -> VerifyReport:
    """``V^(n) = sum_{i<=n} L_-1^i V_B (x) C[d]`` is a submodule when mu = 1.

    With ``mu != 1`` every closure case is replaced by its negative control:
    ``L_m (L_-1^n e_0 (x) 1)`` must leave ``V^(n)`` through an
    ``L_-1^{n+1} e_0 (x) 1`` term with coefficient ``lambda^m (mu^m - 1)``.
    """
    mu = as_scalar(mu)
    p = TensorParams.of(mu, lambda_, alpha)
    report = VerifyReport(
        "filtration",
        {**p.as_dict(), "vb": spec.to_config(), "p_max": p_max, "window": window.as_dict()},
    )
    if mu == ONE:
        for n in range(p_max + 1):
            span = _layer_basis(n, spec.dim, window.n_max + 1)
            bad = None
            for m in window.m_values:
                for i in range(n + 1):
                    for s in range(spec.dim):
                        for j in range(window.n_max + 1):
                            y = l_action(p, spec, m, TensorElement.monomial(i, s, j))
                            if not span.contains(y):
                                bad = bad or (m, TensorElement.monomial(i, s, j), y)
            name = f"V^({n}) closed under L_m, m in [{window.m_lo}, {window.m_hi}]"
            if bad is None:
                report.add(name, True)
            else:
                report.add(name, False, f"L_{bad[0]}({bad[1]}) = {bad[2]}", bad[1].to_json())
        for n in range(1, p_max + 1):
            found = quotient_intertwiner_search(lambda_, alpha, spec, n, window)
            matched = [k for k, v in found.items() if v]
            rejected = [k for k, v in found.items() if not v]
            report.add(
                f"V^({n})/V^({n - 1}) intertwiner search",
                True,
                f"intertwines: {matched or 'none'}; rejected: {rejected or 'none'}",
            )
        control = TensorParams.of(control_mu, lambda_, alpha)
    else:
        control = p
    for n in range(p_max + 1):
        report.cases.append(_negative_control(control, spec, n, window))
    return report


def _negative_control(p: TensorParams, spec: BModuleSpec, n: int, window: TruncationWindow):
    name = f"negative control (mu = {p.mu}): V^({n}) not closed"
    x = TensorElement.monomial(n, 0, 0)
    for m in window.m_values:
        if p.mu**m == ONE:
            continue
        y = l_action(p, spec, m, x)
        expected = p.lambda_**m * (p.mu**m - ONE)
        got = y.coeff(n + 1, 0, 0)
        leak = y.max_k > n
        passed = leak and got == expected
        detail = f"m = {m}: coefficient of L_-1^{n + 1} e_0 is {got}, expected lambda^m (mu^m - 1) = {expected}"
        return Case(name, passed, detail, y.to_json())
    return Case(name, False, "no m with mu^m != 1 in the window")


def tau(x: TensorElement) -> TensorElement:
    """``v (x) f -> L_-1 v (x) f - v (x) d f``."""
    return x.lminus_mul() - x.d_mul()


def kfree_normal_form(y: TensorElement) -> TensorElement:
    """Image of ``y`` in the quotient by the image of ``tau``, via ``L_-1 -> d``."""
    out = TensorElement.zero()
    for (k, s), p in y.blocks.items():
        out = out + TensorElement.from_blocks({(0, s): Poly._raw((ZERO,) * k + p.coeffs)})
    return out


TAU_WINDOW = TruncationWindow(k_max=3, n_max=4, m_lo=-4, m_hi=4)


def check_tau(lambda_, mu, spec: BModuleSpec, window: TruncationWindow = TAU_WINDOW) -> VerifyReport:
    """The alpha = 0 submodule, the map into it from alpha = 1, and the quotient."""
    p0 = TensorParams.of(mu, lambda_, 0)
    p1 = TensorParams.of(mu, lambda_, 1)
    report = VerifyReport(
        "tau",
        {"mu": str(p0.mu), "lambda": str(p0.lambda_), "vb": spec.to_config(), "window": window.as_dict()},
    )
    d = spec.dim
    order_key = lambda col: (-col[0], col[1], col[2])  # noqa: E731 - pivots on the largest k
    sub = SpanBasis(
        (
            tau(TensorElement.monomial(j, s, k))
            for j in range(window.k_max + 2)
            for s in range(d)
            for k in range(window.n_max + 2)
        ),
        key=order_key,
    )
    basis = [
        TensorElement.from_blocks({(j, s): j_basis(0, k)})
        for j in range(window.k_max + 1)
        for s in range(d)
        for k in range(window.n_max + 1)
    ]
    view = FModuleView(OmegaParams(p0.lambda_ * p0.mu, 0), spec)
    for m in window.m_values:
        bad = next((x for x in basis if not sub.contains(l_action(p0, spec, m, tau(x)))), None)
        report.add(
            f"image of tau closed under L_{m}",
            bad is None,
            None if bad is None else f"L_{m} tau({bad}) leaves the span",
            None if bad is None else tau(bad).to_json(),
        )
    for m in window.m_values:
        bad = next((x for x in basis if tau(l_action(p1, spec, m, x)) != l_action(p0, spec, m, tau(x))), None)
        report.add(
            f"tau intertwines L_{m} (alpha = 1 -> alpha = 0)",
            bad is None,
            None if bad is None else f"fails on {bad}",
            None if bad is None else bad.to_json(),
        )
    for m in window.m_values:
        bad = None
        for s in range(d):
            for k in range(window.n_max + 1):
                rep = TensorElement.from_blocks({(0, s): j_basis(0, k)})
                y = l_action(p0, spec, m, rep)
                residual = TensorElement(sub.reduce(y))
                nf = kfree_normal_form(y)
                expected = f_action(view, m, rep)
                if residual != nf or nf != expected:
                    bad = bad or rep
        report.add(
            f"quotient L_{m} matches F(V_B, Omega(lambda*mu, 0))",
            bad is None,
            None if bad is None else f"mismatch on {bad}",
            None if bad is None else bad.to_json(),
        )
    return report

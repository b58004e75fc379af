"""Acceptance criteria, one test each.  A PASS/FAIL line per criterion is
printed in the terminal summary."""

import json
import time
from fractions import Fraction
from pathlib import Path

import pytest

from _oracle import j_poly, omega_action as ref_omega, sym, sym_poly
from virmod.cli import main
from virmod.hmod import BModuleSpec
from virmod.omega import OmegaParams, alpha_zero_submodule_check, omega_action
from virmod.poly import j_basis
from virmod.scalar import I, GaussianRational
from virmod.tensor import TensorParams
from virmod.verify import (
    IsoKind,
    TruncationWindow,
    check_bracket,
    check_eq_extra,
    check_filtration,
    check_ord,
    check_phi,
    check_psi,
    check_tau,
    classify_iso,
    simplicity_probe,
)

FIX = Path(__file__).parent / "fixtures"
hw = BModuleSpec.highest_weight
P = TensorParams.of
HALF = GaussianRational(Fraction(1, 2))


def test_bracket_law_on_all_samples(criterion):
    criterion(1, "bracket law, 5 parameter samples x 4 specs, 200 samples, m, n in [-4, 4]")
    params = [P(2, 1, 1), P(1, 1, 1), P(2, 1, 0), P(HALF, 3, -2), P(I, 1, HALF)]
    specs = [hw(1), hw(-2), hw(0), BModuleSpec.trivial(1)]
    window = TruncationWindow(k_max=3, n_max=3, m_lo=-4, m_hi=4)
    start = time.perf_counter()
    for p in params:
        for spec in specs:
            report = check_bracket(p, spec, window, samples=200, seed=0)
            assert report.passed, (p.as_dict(), spec.to_config(), report.failures()[:1])
            assert sum(1 for c in report.cases if c.name.startswith("[L_")) == 81
    assert time.perf_counter() - start < 20


@pytest.mark.parametrize("p", [OmegaParams(2, HALF), OmegaParams(I, -3)], ids=["2_half", "i_minus3"])
def test_omega_basis_identity(criterion, p):
    criterion(2, "L_m J_n^k = lambda^m (d - m alpha) J_{m+n}^k on two samples")
    lam, alpha = sym(p.lambda_), sym(p.alpha)
    for m in range(-4, 5):
        for n in range(-4, 5):
            for k in range(6):
                got = omega_action(p, m, j_basis(n, k))
                expected = j_basis(m + n, k).mul_linear(-(p.alpha * m)).scale(p.lambda_**m)
                assert got == expected
                assert sym_poly(got) == ref_omega(lam, alpha, m, j_poly(n, k))


def test_exp_shift_operator_identity(criterion):
    criterion(3, "E_k L_-1^i = (L_-1 - k)^i E_k for k in [-3, 3], i <= 4")
    report = check_eq_extra(hw(1), -3, 3, 4)
    assert report.passed
    assert len(report.cases) == 35


def test_order_additivity(criterion):
    criterion(4, "ord(L_-1^k v) = k for k <= 6, weight 1")
    report = check_ord(hw(1), k_max=6)
    assert report.passed
    assert [c.name for c in report.cases] == [f"ord(L_-1^{k} e_0) = {k} + 0" for k in range(7)]


def test_filtration_closure_and_control(criterion):
    criterion(5, "filtration V^(n), n <= 3, closed at mu = 1; mu = 2 leaks with (mu^m - 1)")
    window = TruncationWindow(k_max=3, n_max=5, m_lo=-3, m_hi=3)
    report = check_filtration(1, 2, hw(3), p_max=3, window=window)
    assert report.passed
    closure = [c for c in report.cases if "closed under" in c.name]
    assert len(closure) == 4
    search = [c for c in report.cases if "intertwiner search" in c.name]
    assert len(search) == 3 and all("intertwines: [" in c.detail for c in search)
    control = check_filtration(1, 2, hw(3), p_max=3, window=window, mu=2)
    assert control.passed and len(control.cases) == 4
    first = control.cases[0]
    assert first.witness and "lambda^m (mu^m - 1)" in first.detail


def test_alpha_zero_submodule_and_tau(criterion):
    criterion(6, "alpha = 0 submodule closure, tau intertwining, quotient match (lambda, mu) = (1, 2)")
    window = TruncationWindow(k_max=3, n_max=4, m_lo=-4, m_hi=4)
    report = check_tau(1, 2, hw(1), window)
    assert report.passed, report.failures()[:1]
    assert len(report.cases) == 27


def test_phi_isomorphism(criterion):
    criterion(7, "phi intertwines and is bijective on the window, (2, 1, 3, 5)")
    report = check_phi(2, 1, 3, 5, TruncationWindow(k_max=4, n_max=4, m_lo=-4, m_hi=4))
    assert report.passed, report.failures()[:1]
    assert any(c.name == "phi bijective on the window" for c in report.cases)


def test_classifier(criterion):
    criterion(8, "classifier: case A, case B pair, NotIsomorphic when only alpha differs")
    assert classify_iso(P(2, 1, 5), hw(-7), P(2, 1, 5), hw(-7)).kind is IsoKind.CASE_A
    assert classify_iso(P(2, 1, 5), hw(-7), P(HALF, 2, 7), hw(-5)).kind is IsoKind.CASE_B
    assert classify_iso(P(2, 1, 3), hw(-7), P(2, 1, 4), hw(-7)).kind is IsoKind.NOT_ISOMORPHIC


def test_psi_into_tensor_product(criterion):
    criterion(9, "psi intertwines on the window; wrong weight is caught with a witness")
    report = check_psi(2, 3, -5, TruncationWindow(k_max=4, n_max=4, m_lo=-4, m_hi=4))
    assert report.passed, report.failures()[:1]
    control = report.cases[-1]
    assert control.name.startswith("negative control") and control.witness


def test_simplicity_probes(criterion):
    criterion(10, "probes: V^(0) invariant, tau image invariant, inner window generated; each < 30 s")
    inner = TruncationWindow(k_max=2, n_max=3, m_lo=-3, m_hi=3)
    cases = [(P(1, 1, 1), "proper"), (P(2, 1, 0), "proper"), (P(2, 1, 1), "cyclic")]
    for p, expect in cases:
        start = time.perf_counter()
        report = simplicity_probe(p, hw(1), inner_window=inner)
        assert time.perf_counter() - start < 30
        assert report.passed, (p.as_dict(), report.failures()[:1])
        assert report.params["expect"] == expect
        assert report.note == "finite probe, not a proof"
    cyclic = simplicity_probe(P(2, 1, 1), hw(1), inner_window=inner)
    assert cyclic.params["seed"] == [{"k": 1, "s": 0, "n": 1, "c": "1"}]


@pytest.mark.parametrize("lam", [1, 3, I])
def test_omega_alpha_zero_witness(criterion, lam):
    criterion(11, "d C[d] closed in Omega(lambda, 0), m in [-4, 4], degrees <= 6")
    report = alpha_zero_submodule_check(OmegaParams(lam, 0), (-4, 4), 6)
    assert report.passed and len(report.cases) == 9


def test_cli_determinism_and_exit_codes(criterion, tmp_path, capsys):
    criterion(12, "CLI reports byte-identical across runs; malformed inputs exit 2")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cfg = FIX / "hw_2_1_1.json"
    assert main(["verify", "--config", str(cfg), "--suite", "all", "--report", str(a), "--seed", "11"]) == 0
    assert main(["verify", "--config", str(cfg), "--suite", "all", "--report", str(b), "--seed", "11"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["pass"] is True
    capsys.readouterr()
    for fixture, field in [("bad_scalar.json", "params.mu"), ("bad_vb.json", "vb.beta"), ("bad_json.json", "config")]:
        assert main(["verify", "--config", str(FIX / fixture)]) == 2
        assert f"error: {field}:" in capsys.readouterr().err

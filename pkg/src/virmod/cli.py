"""Command line: ``virmod verify | act | classify``.

Exit status is 0 when everything passes, 1 when a suite fails and 2 on bad
input (the message names the offending field).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import SUITES, ConfigError, RunConfig, load_config, parse_params, parse_vb
from .omega import OmegaParams, alpha_zero_submodule_check
from .report import VerifyReport
from .scalar import ONE, ZERO, parse_scalar
from .tensor import apply_word, format_element, parse_element, parse_word
from .verify.bracket import check_bracket
from .verify.filtration import FILTRATION_WINDOW, TAU_WINDOW, check_filtration, check_tau
from .verify.induced import check_eq_extra, check_ord
from .verify.iso import ISO_WINDOW, IsoKind, check_phi, check_psi, classify_iso
from .verify.probe import simplicity_probe
from .verify.window import TruncationWindow


class Skip(Exception):
    """The configured module does not meet a suite's hypotheses."""


def _classify_report(cfg: RunConfig) -> VerifyReport:
    other = cfg.extra.get("classify", {})
    if not isinstance(other, dict):
        raise ConfigError("classify", "expected an object")
    p2 = parse_params(other["params"], "classify.params") if "params" in other else cfg.params
    vb2 = parse_vb(other["vb"], "classify.vb") if "vb" in other else cfg.vb
    expect = other.get("expect")
    if expect is not None and expect not in {k.value for k in IsoKind}:
        raise ConfigError("classify.expect", f"unknown verdict {expect!r}")
    try:
        forward = classify_iso(cfg.params, cfg.vb, p2, vb2)
        backward = classify_iso(p2, vb2, cfg.params, cfg.vb)
    except ValueError as exc:
        raise Skip(str(exc)) from None
    report = VerifyReport(
        "classify",
        {"first": {**cfg.params.as_dict(), "vb": cfg.vb.to_config()}, "second": {**p2.as_dict(), "vb": vb2.to_config()}},
    )
    report.add(
        f"verdict {forward}",
        expect is None or forward.kind.value == expect,
        json.dumps(forward.to_dict()["conditions"], sort_keys=True),
    )
    report.add("verdict is symmetric", forward.kind == backward.kind, f"reverse verdict {backward}")
    return report


def run_suite(name: str, cfg: RunConfig) -> VerifyReport:
    p, spec, w = cfg.params, cfg.vb, cfg.window
    if name == "bracket":
        return check_bracket(p, spec, w or TruncationWindow(k_max=3, n_max=3), cfg.samples, cfg.seed)
    if name == "filtration":
        return check_filtration(p.lambda_, p.alpha, spec, window=w or FILTRATION_WINDOW, mu=p.mu)
    if name == "tau":
        return check_tau(p.lambda_, p.mu, spec, w or TAU_WINDOW)
    if name == "phi":
        extra = cfg.extra.get("phi", {})
        if not isinstance(extra, dict):
            raise ConfigError("phi", "expected an object")
        try:
            alpha2 = parse_scalar(extra["alpha2"]) if "alpha2" in extra else p.alpha
        except ValueError as exc:
            raise ConfigError("phi.alpha2", str(exc)) from None
        try:
            return check_phi(p.mu, p.lambda_, p.alpha, alpha2, w or ISO_WINDOW)
        except ValueError as exc:
            raise Skip(str(exc)) from None
    if name == "classify":
        return _classify_report(cfg)
    if name == "psi":
        if p.lambda_ != ONE or not spec.is_highest_weight:
            raise Skip("needs lambda = 1 and a highest-weight V")
        try:
            return check_psi(p.mu, p.alpha, spec.beta, w or ISO_WINDOW)
        except ValueError as exc:
            raise Skip(str(exc)) from None
    if name == "probe":
        return simplicity_probe(p, spec)
    if name == "omega-alpha0":
        return alpha_zero_submodule_check(OmegaParams(p.lambda_, ZERO))
    if name == "eq-extra":
        return check_eq_extra(spec, seed=cfg.seed)
    if name == "ord":
        return check_ord(spec)
    raise ConfigError("suite", f"unknown suite {name!r}")


def _select(arg: str | None, cfg: RunConfig) -> tuple[list[str], bool]:
    if arg is None:
        return list(cfg.suites), True
    if arg == "all":
        return list(SUITES), True
    names = [s.strip() for s in arg.split(",") if s.strip()]
    bad = [s for s in names if s not in SUITES]
    if bad or not names:
        raise ConfigError("suite", f"unknown suite {bad[0] if bad else arg!r}; choose from {', '.join(SUITES)} or all")
    return names, False


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = RunConfig(cfg.params, cfg.vb, cfg.window, args.seed, cfg.samples, cfg.suites, cfg.extra)
    names, lenient = _select(args.suite, cfg)
    reports, skipped = [], {}
    for name in names:
        try:
            reports.append(run_suite(name, cfg))
        except Skip as exc:
            if not lenient:
                raise ConfigError(name, str(exc)) from None
            skipped[name] = str(exc)
    ok = all(r.passed for r in reports)
    for r in reports:
        print(r.summary())
        for c in r.failures():
            print(f"  FAIL {c.name}: {c.detail or ''}".rstrip())
    for name, why in skipped.items():
        print(f"[SKIP] {name}: {why}")
    doc = {
        "config": str(args.config),
        "seed": cfg.seed,
        "reports": [r.to_dict() for r in reports],
        "skipped": skipped,
        "pass": ok,
    }
    if args.report:
        try:
            Path(args.report).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        except OSError as exc:
            raise ConfigError("report", f"cannot write {args.report}: {exc.strerror}") from None
    return 0 if ok else 1


def cmd_act(args) -> int:
    cfg = load_config(args.config)
    try:
        word = parse_word(args.word)
    except ValueError as exc:
        raise ConfigError("word", str(exc)) from None
    try:
        x = parse_element(args.element)
    except ValueError as exc:
        raise ConfigError("element", str(exc)) from None
    if any(s >= cfg.vb.dim for (_, s, _) in x.terms()):
        raise ConfigError("element", f"basis index out of range for dim {cfg.vb.dim}")
    y = apply_word(cfg.params, cfg.vb, word, x)
    print(format_element(y))
    print(json.dumps(y.to_json(), sort_keys=True))
    return 0


def cmd_classify(args) -> int:
    a, b = load_config(args.config1), load_config(args.config2)
    try:
        verdict = classify_iso(a.params, a.vb, b.params, b.vb)
    except ValueError as exc:
        raise ConfigError("classify", str(exc)) from None
    print(verdict)
    print(json.dumps(verdict.to_dict(), sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="virmod", description="Exact checks on non-weight Virasoro modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--config", required=True)
    v.add_argument("--suite", help=f"comma-separated names from {', '.join(SUITES)}, or all")
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--seed", type=int)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("act", help="apply a word of generators to an element")
    a.add_argument("--config", required=True)
    a.add_argument("--word", required=True, help='e.g. "[1, -1, C]"; the rightmost letter acts first')
    a.add_argument("--element", required=True, help='e.g. "L-1^1 e_0 d^2 * 1/2 + e_0 * 1"')
    a.set_defaults(func=cmd_act)

    c = sub.add_parser("classify", help="decide isomorphism of two configured modules")
    c.add_argument("config1")
    c.add_argument("config2")
    c.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

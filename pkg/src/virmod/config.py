"""JSON run configuration.  Scalars are strings so nothing passes through floats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .hmod import BModuleSpec
from .scalar import GaussianRational, parse_scalar
from .tensor import TensorParams
from .verify.window import TruncationWindow

SUITES = (
    "bracket",
    "filtration",
    "tau",
    "phi",
    "classify",
    "psi",
    "probe",
    "omega-alpha0",
    "eq-extra",
    "ord",
)


class ConfigError(ValueError):
    """Bad input; ``field`` names the offending entry, e.g. ``params.mu``."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class RunConfig:
    params: TensorParams
    vb: BModuleSpec
    window: TruncationWindow | None = None
    seed: int = 0
    samples: int = 200
    suites: tuple = SUITES
    extra: dict = field(default_factory=dict)


def _scalar(obj: dict, key: str, where: str) -> GaussianRational:
    if key not in obj:
        raise ConfigError(f"{where}.{key}", "missing")
    try:
        return parse_scalar(obj[key])
    except ValueError as exc:
        raise ConfigError(f"{where}.{key}", str(exc)) from None


def _int(obj: dict, key: str, where: str, default: int, minimum: int | None = None) -> int:
    value = obj.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{where}.{key}" if where else key, "expected an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}.{key}" if where else key, f"must be at least {minimum}")
    return value


def parse_params(obj, where: str = "params") -> TensorParams:
    if not isinstance(obj, dict):
        raise ConfigError(where, "expected an object")
    mu = _scalar(obj, "mu", where)
    lam = _scalar(obj, "lambda", where)
    alpha = _scalar(obj, "alpha", where)
    if not mu:
        raise ConfigError(f"{where}.mu", "must be nonzero")
    if not lam:
        raise ConfigError(f"{where}.lambda", "must be nonzero")
    return TensorParams.of(mu, lam, alpha)


def parse_vb(obj, where: str = "vb") -> BModuleSpec:
    try:
        return BModuleSpec.from_config(obj)
    except ValueError as exc:
        msg = str(exc)
        head, _, rest = msg.partition(": ")
        if head.startswith("vb"):
            raise ConfigError(where + head[2:], rest) from None
        raise ConfigError(where, msg) from None


def parse_window(obj) -> TruncationWindow:
    if not isinstance(obj, dict):
        raise ConfigError("window", "expected an object")
    base = TruncationWindow()
    vals = {k: _int(obj, k, "window", getattr(base, k)) for k in ("k_max", "n_max", "m_lo", "m_hi")}
    try:
        return TruncationWindow(**vals)
    except ValueError as exc:
        raise ConfigError("window", str(exc)) from None


def parse_config(obj) -> RunConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config", "expected a JSON object")
    params = parse_params(obj.get("params"))
    vb = parse_vb(obj.get("vb"))
    window = parse_window(obj["window"]) if "window" in obj else None
    seed = _int(obj, "seed", "", 0)
    samples = _int(obj, "samples", "", 200, minimum=1)
    suites = obj.get("suites", list(SUITES))
    if not isinstance(suites, list) or any(s not in SUITES for s in suites):
        raise ConfigError("suites", f"expected a list drawn from {', '.join(SUITES)}")
    extra = {k: obj[k] for k in ("phi", "classify") if k in obj}
    return RunConfig(params, vb, window, seed, samples, tuple(suites), extra)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_config(obj)

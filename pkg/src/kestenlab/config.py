"""Flat dotted-key experiment configuration.

The file format is line-oriented ``section.key = value`` text: values are
numbers, quoted or bare strings, or comma-separated numeric lists.  Unknown
keys are rejected so typos cannot silently change an experiment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exceptions import ConfigError
from .streams import default_workers
from .laws import (ConstA, ConstB, ExponentialB, GammaScaledA, LognormalA,
                   NormalB, ParetoB, ParetoIID, SymmetricParetoIID, UniformA)
from .sre import SREModel

TASKS = ("solve", "constants", "ld-ratio", "nagaev-iid", "blocks", "ruin",
         "bounds", "validate")

_A_LAWS = {
    "lognormal": (LognormalA, ("a_mu", "a_sigma2")),
    "uniform": (UniformA, ("a_hi",)),
    "gamma": (GammaScaledA, ("a_shape", "a_scale")),
    "const": (ConstA, ("a_value",)),
}
_B_LAWS = {
    "const": (ConstB, ("b_value",)),
    "normal": (NormalB, ("b_mu", "b_sigma2")),
    "pareto": (ParetoB, ("b_index", "b_scale")),
    "exponential": (ExponentialB, ("b_rate",)),
}
_IID_LAWS = {
    "pareto": ParetoIID,
    "symmetric-pareto": SymmetricParetoIID,
}

# every accepted key with its parser; None marks context-dependent handling
_KNOWN_KEYS = {
    "model.a_law": str, "model.a_mu": float, "model.a_sigma2": float,
    "model.a_hi": float, "model.a_shape": float, "model.a_scale": float,
    "model.a_value": float,
    "model.b_law": str, "model.b_value": float, "model.b_mu": float,
    "model.b_sigma2": float, "model.b_index": float, "model.b_scale": float,
    "model.b_rate": float,
    "seed": int, "workers": int, "output.format": str,
    "solve.tol": float,
    "constants.nsamples": int, "constants.window_lo": float,
    "constants.window_hi": float,
    "ld.n": int, "ld.m_exponent": float, "ld.c_n": float, "ld.s_n": float,
    "ld.grid_points": int, "ld.estimator": str, "ld.budget": int,
    "ld.denom_samples": int,
    "nagaev.law": str, "nagaev.alpha": float, "nagaev.scale": float,
    "nagaev.n": int, "nagaev.grid_points": int, "nagaev.budget": int,
    "nagaev.delta": float, "nagaev.p_floor": float,
    "blocks.x": float, "blocks.n": int, "blocks.sigma": float,
    "blocks.budget": int,
    "ruin.mu": float, "ruin.u_grid": list, "ruin.horizon_mult": float,
    "ruin.budget": int,
    "bounds.trials": int,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated configuration for one CLI task run."""

    task: str
    model: SREModel | None
    iid_law: object | None
    seed: int
    workers: int
    output_format: str
    params: dict = field(default_factory=dict)


def _parse_scalar(text: str, key: str, line_no: int):
    text = text.strip()
    if not text:
        raise ConfigError("empty value", key=key, line=line_no)
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1]
    if "," in text:
        return [_parse_scalar(part, key, line_no) for part in text.split(",")]
    try:
        if any(ch in text for ch in ".eE") and not text.lstrip("+-").isdigit():
            return float(text)
        return int(text)
    except ValueError:
        return text


def parse_config_text(text: str) -> dict:
    """Raw key -> value mapping with duplicate and syntax detection."""
    out: dict = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=line_no)
        key, value = line.split("=", 1)
        key = key.strip()
        if key in out:
            raise ConfigError("duplicate key", key=key, line=line_no)
        if key not in _KNOWN_KEYS:
            raise ConfigError("unknown key", key=key, line=line_no)
        out[key] = (_parse_scalar(value, key, line_no), line_no)
    return out


def _coerce(raw: dict, key: str, default=None):
    if key not in raw:
        return default
    value, line_no = raw[key]
    want = _KNOWN_KEYS[key]
    if want is list:
        items = value if isinstance(value, list) else [value]
        try:
            return [float(v) for v in items]
        except (TypeError, ValueError):
            raise ConfigError("expected a numeric list", key=key, line=line_no)
    if want is float and isinstance(value, int):
        return float(value)
    if not isinstance(value, want):
        raise ConfigError(f"expected {want.__name__}", key=key, line=line_no)
    return value


def _build_law(raw: dict, side: str):
    table = _A_LAWS if side == "a" else _B_LAWS
    key = f"model.{side}_law"
    name = _coerce(raw, key)
    if name is None:
        return None
    if name not in table:
        raise ConfigError(f"unknown {side}-law '{name}' "
                          f"(choose from {sorted(table)})", key=key)
    cls, param_keys = table[name]
    args = []
    for pk in param_keys:
        full = f"model.{pk}"
        val = _coerce(raw, full)
        if val is None:
            if pk == "b_scale":
                val = 1.0
            else:
                raise ConfigError(f"{name} law needs '{full}'", key=full)
        args.append(val)
    try:
        return cls(*args)
    except ValueError as exc:
        raise ConfigError(str(exc), key=key)


def _build_iid_law(raw: dict):
    name = _coerce(raw, "nagaev.law")
    if name is None:
        return None
    if name not in _IID_LAWS:
        raise ConfigError(f"unknown iid law '{name}' "
                          f"(choose from {sorted(_IID_LAWS)})", key="nagaev.law")
    alpha = _coerce(raw, "nagaev.alpha")
    if alpha is None or alpha <= 0:
        raise ConfigError("nagaev.alpha must be positive", key="nagaev.alpha")
    scale = _coerce(raw, "nagaev.scale", 1.0)
    return _IID_LAWS[name](alpha, scale)


def _validate_params(task: str, params: dict) -> None:
    checks = {
        "ld.budget": (params.get("ld.budget"), lambda v: v >= 10**4,
                      "must be at least 1e4 paths"),
        "ld.n": (params.get("ld.n"), lambda v: v >= 16, "must be >= 16"),
        "ld.denom_samples": (params.get("ld.denom_samples"),
                             lambda v: v >= 10**5, "must be at least 1e5"),
        "nagaev.budget": (params.get("nagaev.budget"), lambda v: v >= 10**4,
                          "must be at least 1e4 paths"),
        "constants.nsamples": (params.get("constants.nsamples"),
                               lambda v: v >= 10**4, "must be at least 1e4"),
        "ruin.budget": (params.get("ruin.budget"), lambda v: v >= 10**4,
                        "must be at least 1e4 paths"),
        "ruin.horizon_mult": (params.get("ruin.horizon_mult"),
                              lambda v: v >= 8, "must be at least 8"),
        "bounds.trials": (params.get("bounds.trials"), lambda v: v >= 10**3,
                          "must be at least 1e3"),
        "blocks.sigma": (params.get("blocks.sigma"),
                         lambda v: 0 < v < 0.25, "must lie in (0, 1/4)"),
    }
    for key, (value, good, msg) in checks.items():
        if value is not None and not good(value):
            raise ConfigError(msg, key=key)


def load_config(path: str, task: str, seed: int | None = None,
                workers: int | None = None) -> ExperimentConfig:
    """Parse, validate and assemble the configuration for ``task``."""
    if task not in TASKS:
        raise ConfigError(f"unknown task '{task}' (choose from {TASKS})")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")

    model = None
    a_law = _build_law(raw, "a")
    b_law = _build_law(raw, "b")
    if (a_law is None) != (b_law is None):
        raise ConfigError("model needs both model.a_law and model.b_law")
    if a_law is not None:
        model = SREModel(a_law, b_law)
    iid_law = _build_iid_law(raw)

    needs_model = task in ("solve", "constants", "ld-ratio", "blocks",
                           "ruin", "validate")
    if needs_model and model is None:
        raise ConfigError(f"task '{task}' needs a model block")
    if task == "nagaev-iid" and iid_law is None:
        raise ConfigError("task 'nagaev-iid' needs nagaev.law and nagaev.alpha")

    params = {}
    for key in _KNOWN_KEYS:
        if key.startswith(("model.", "nagaev.law", "nagaev.alpha",
                           "nagaev.scale")):
            continue
        if key in ("seed", "workers", "output.format"):
            continue
        val = _coerce(raw, key)
        if val is not None:
            params[key] = val
    _validate_params(task, params)

    cfg_seed = _coerce(raw, "seed", 0)
    cfg_workers = _coerce(raw, "workers", default_workers())
    fmt = _coerce(raw, "output.format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("output.format must be 'csv' or 'json'",
                          key="output.format")
    return ExperimentConfig(
        task=task,
        model=model,
        iid_law=iid_law,
        seed=seed if seed is not None else cfg_seed,
        workers=workers if workers is not None else cfg_workers,
        output_format=fmt,
        params=params,
    )


def config_echo(cfg: ExperimentConfig) -> dict:
    """Reproducibility block embedded in every report."""
    echo = {
        "task": cfg.task,
        "seed": cfg.seed,
        "workers": cfg.workers,
        "output_format": cfg.output_format,
        "params": {k: cfg.params[k] for k in sorted(cfg.params)},
    }
    if cfg.model is not None:
        echo["model"] = cfg.model.label()
    if cfg.iid_law is not None:
        echo["iid_law"] = cfg.iid_law.label()
    return echo

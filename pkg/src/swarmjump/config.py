"""Experiment configuration: defaults, YAML loading, flag overrides, validation."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .dynamics import SwarmConfig
from .noise import NoiseKind
from .objectives import ObjectiveId

EXPERIMENTS = ("single", "batch", "sigma_sweep", "chaos", "cbo_limit")

# Diffusion gain defaults depend on the noise kind.
DEFAULT_SIGMA = {NoiseKind.GAUSSIAN: 0.75, NoiseKind.CAUCHY: 0.25}


class ConfigError(Exception):
    """Invalid experiment configuration; the message names the offending key."""


@dataclass
class ExperimentConfig:
    """Resolved settings for one CLI invocation.

    ``sigma=None`` means "use the noise kind's default" and is resolved by
    :func:`finalize`.  Grid fields are only consulted by the experiment kinds
    that use them.
    """

    experiment: str = "batch"
    objective: str = "ackley"
    dim: int = 20
    n_particles: int = 200
    lam: float = 1.0
    sigma: float | None = None
    sigma0: float = 0.0
    nu: float = 1.0
    dt: float = 0.1
    alpha: float = 1e5
    eps: float = 1.0
    noise: str = "gaussian"
    variant: str = "jump"
    domain_lo: float = -1.0
    domain_hi: float = 1.0
    cbo_sigma_tilde: float = 1.0
    velocity_init: str = "zero"
    n_runs: int = 100
    k_max: int = 1000
    root_seed: int = 0
    stall_tol: float = 1e-4
    stall_window: int = 500
    success_radius: float = 0.25
    success_in_unit: bool = False
    out_dir: str = "results"
    jobs: int | None = None
    sigmas: list[float] = field(
        default_factory=lambda: [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5]
    )
    eps_values: list[float] = field(default_factory=lambda: [1.0, 0.5, 0.25, 0.1])
    sigma_tilde_grid: list[float] = field(
        default_factory=lambda: [0.5 * k for k in range(1, 11)]
    )
    n_values: list[int] = field(default_factory=lambda: [32, 64, 128, 256, 512, 1024])
    n_ref: int = 4096
    horizon_T: float = 5.0
    n_trials: int = 10


_FIELDS = {f.name: f for f in dataclasses.fields(ExperimentConfig)}

_FLOAT_KEYS = {
    "lam", "sigma", "sigma0", "nu", "dt", "alpha", "eps", "domain_lo", "domain_hi",
    "cbo_sigma_tilde", "stall_tol", "success_radius", "horizon_T",
}
_INT_KEYS = {"dim", "n_particles", "n_runs", "k_max", "root_seed", "stall_window",
             "n_ref", "n_trials", "jobs"}
_FLOAT_LIST_KEYS = {"sigmas", "eps_values", "sigma_tilde_grid"}
_INT_LIST_KEYS = {"n_values"}
_BOOL_KEYS = {"success_in_unit"}


def _as_int(key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        value = int(value)
    return int(value)


def _as_float(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    return float(value)


def _coerce(key: str, value):
    if value is None:
        return None
    if key in _FLOAT_KEYS:
        return _as_float(key, value)
    if key in _INT_KEYS:
        return _as_int(key, value)
    if key in _BOOL_KEYS:
        if not isinstance(value, bool):
            raise ConfigError(f"{key}: expected a boolean, got {value!r}")
        return value
    if key in _FLOAT_LIST_KEYS or key in _INT_LIST_KEYS:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{key}: expected a list, got {value!r}")
        cast = _as_int if key in _INT_LIST_KEYS else _as_float
        return [cast(key, v) for v in value]
    if not isinstance(value, str):
        raise ConfigError(f"{key}: expected a string, got {value!r}")
    return value


def read_config_file(path: str | Path) -> dict:
    """Parse a YAML config file into a flat key/value mapping."""
    text = Path(path).read_text()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        detail = str(exc)
        raise ConfigError(f"malformed config file {path}: {detail}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a key/value mapping")
    if "lambda" in data:  # friendlier alias for the drift gain
        data["lam"] = data.pop("lambda")
    unknown = sorted(set(data) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return data


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Defaults, then config-file keys, then explicit overrides (CLI flags)."""
    merged: dict = {}
    for source in (file_values or {}), (overrides or {}):
        for key, value in source.items():
            if key not in _FIELDS:
                raise ConfigError(f"unknown config keys: {key}")
            merged[key] = _coerce(key, value)
    cfg = ExperimentConfig(**merged)
    return finalize(cfg)


def finalize(cfg: ExperimentConfig) -> ExperimentConfig:
    """Resolve noise-dependent defaults and validate every field."""
    try:
        noise = NoiseKind(cfg.noise)
    except ValueError:
        raise ConfigError(f"noise: must be one of {[k.value for k in NoiseKind]}") from None
    if cfg.sigma is None:
        cfg.sigma = DEFAULT_SIGMA[noise]
    _validate(cfg)
    return cfg


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise ConfigError(message)


def _validate(cfg: ExperimentConfig) -> None:
    _require(cfg.experiment in EXPERIMENTS, f"experiment: must be one of {EXPERIMENTS}")
    names = {m.value for m in ObjectiveId}
    from .objectives import _CUSTOM  # registered callbacks are accepted too

    _require(
        cfg.objective in names or cfg.objective in _CUSTOM,
        f"objective: unknown objective {cfg.objective!r}",
    )
    _require(cfg.dim >= 1, "dim: must be >= 1")
    _require(cfg.n_particles >= 1, "n_particles: must be >= 1")
    _require(cfg.lam > 0.0, "lam: must be > 0")
    _require(cfg.sigma >= 0.0, "sigma: must be >= 0")
    _require(cfg.sigma0 >= 0.0, "sigma0: must be >= 0")
    _require(cfg.nu > 0.0, "nu: must be > 0")
    _require(cfg.dt > 0.0, "dt: must be > 0")
    _require(cfg.alpha >= 0.0, "alpha: must be >= 0")
    _require(cfg.eps > 0.0, "eps: must be > 0")
    _require(cfg.domain_lo < cfg.domain_hi, "domain_lo: must be < domain_hi")
    _require(cfg.cbo_sigma_tilde >= 0.0, "cbo_sigma_tilde: must be >= 0")
    _require(cfg.velocity_init in ("zero", "gaussian"),
             "velocity_init: must be 'zero' or 'gaussian'")
    _require(cfg.n_runs >= 1, "n_runs: must be >= 1")
    _require(cfg.k_max >= 1, "k_max: must be >= 1")
    _require(cfg.stall_tol > 0.0, "stall_tol: must be > 0")
    _require(cfg.stall_window >= 0, "stall_window: must be >= 0")
    _require(cfg.success_radius > 0.0, "success_radius: must be > 0")
    _require(cfg.jobs is None or cfg.jobs >= 1, "jobs: must be >= 1")
    from .dynamics import Variant

    try:
        Variant(cfg.variant)
    except ValueError:
        raise ConfigError(f"variant: unknown variant {cfg.variant!r}") from None
    if cfg.experiment == "sigma_sweep":
        _require(len(cfg.sigmas) > 0, "sigmas: must be nonempty")
        _require(all(s >= 0.0 for s in cfg.sigmas), "sigmas: entries must be >= 0")
    if cfg.experiment == "cbo_limit":
        _require(len(cfg.eps_values) > 0, "eps_values: must be nonempty")
        _require(all(0.0 < e <= 1.0 for e in cfg.eps_values),
                 "eps_values: entries must lie in (0, 1]")
        _require(len(cfg.sigma_tilde_grid) > 0, "sigma_tilde_grid: must be nonempty")
        _require(all(s >= 0.0 for s in cfg.sigma_tilde_grid),
                 "sigma_tilde_grid: entries must be >= 0")
    if cfg.experiment == "chaos":
        _require(len(cfg.n_values) > 0, "n_values: must be nonempty")
        _require(min(cfg.n_values) >= 1, "n_values: entries must be >= 1")
        _require(
            all(b > a for a, b in zip(cfg.n_values, cfg.n_values[1:])),
            "n_values: must be strictly increasing",
        )
        _require(cfg.n_ref >= 4 * max(cfg.n_values), "n_ref: must be >= 4 * max(n_values)")
        _require(cfg.horizon_T >= 0.0, "horizon_T: must be >= 0")
        _require(cfg.n_trials >= 1, "n_trials: must be >= 1")
        _require(cfg.variant == "projected_jump", "variant: chaos requires projected_jump")
        _require(0.0 < cfg.dt <= 1.0, "dt: chaos requires dt in (0, 1]")


def to_swarm_config(cfg: ExperimentConfig) -> SwarmConfig:
    """Project the experiment config onto the particle-system parameters."""
    try:
        return SwarmConfig(
            n_particles=cfg.n_particles,
            dim=cfg.dim,
            lam=cfg.lam,
            sigma=cfg.sigma,
            sigma0=cfg.sigma0,
            nu=cfg.nu,
            dt=cfg.dt,
            alpha=cfg.alpha,
            eps=cfg.eps,
            noise=cfg.noise,
            variant=cfg.variant,
            domain_lo=cfg.domain_lo,
            domain_hi=cfg.domain_hi,
            cbo_sigma_tilde=cfg.cbo_sigma_tilde,
            velocity_init=cfg.velocity_init,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def resolved_dict(cfg: ExperimentConfig) -> dict:
    """Plain-dict echo of the resolved config, sufficient to reproduce a run."""
    return dataclasses.asdict(cfg)

"""Experiment harness: single realizations, batch statistics, parameter sweeps,
the interacting-vs-mean-field coupling study, and energy diagnostics.

Batches aggregate independent realizations run on substreams derived from one
root seed, so every result is reproducible from (config, root_seed) alone.
Realizations are embarrassingly parallel; aggregation always reduces in run
order, which keeps outputs identical no matter how many workers ran.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .consensus import consensus_error, consensus_point
from .dynamics import ParticleState, SwarmConfig, Variant, apply_jump_step, init_state, step
from .noise import NoiseKind, derive_seed, step_draws
from .objectives import ObjectiveId, ObjectiveSpec, evaluate, evaluate_many, from_unit, to_unit

# Fitness means in the sigma sweep ignore runs beyond this gap (diverged runs
# would otherwise dominate the plot data).
FITNESS_EXCLUDE_ABOVE = 1e7


class NumericalError(RuntimeError):
    """Raised when a run produces non-finite fitness or consensus values."""


@dataclass(frozen=True, eq=False)
class RunResult:
    """Summary of one realization; consensus and errors are in native coordinates."""

    final_consensus: np.ndarray
    stop_step: int
    fitness_gap: float
    linf_error: float
    seed: int | None = None
    consensus_history: list[np.ndarray] | None = None
    energy_history: list[float] | None = None


@dataclass(frozen=True, eq=False)
class BatchStats:
    """Aggregates over independent realizations."""

    n_runs: int
    success_rate: float
    mean_fitness_gap: float
    mean_linf_error: float
    per_run: list[RunResult] = field(repr=False)


@dataclass
class StallMonitor:
    """Counts consecutive steps with consensus displacement below ``tol``.

    ``update`` returns True once the counter exceeds ``window``; any
    displacement of at least ``tol`` resets it.
    """

    tol: float
    window: int
    counter: int = 0
    prev_consensus: np.ndarray | None = None

    def update(self, xa: np.ndarray) -> bool:
        xa = np.asarray(xa, dtype=float)
        if self.prev_consensus is None:
            self.prev_consensus = xa.copy()
            return False
        if float(np.linalg.norm(xa - self.prev_consensus)) < self.tol:
            self.counter += 1
        else:
            self.counter = 0
        self.prev_consensus = xa.copy()
        return self.counter > self.window


@dataclass(frozen=True, eq=False)
class ChaosReport:
    """Coupled interacting-vs-independent error at the horizon, per system size."""

    n_values: list[int]
    coupled_errors: list[float]
    fitted_slope: float
    intercept: float
    residuals: list[float]
    per_trial: np.ndarray = field(repr=False)


@dataclass(frozen=True, eq=False)
class SweepPoint:
    sigma: float
    success_rate: float
    mean_fitness_gap: float
    mean_linf_error: float
    stats: BatchStats = field(repr=False)


@dataclass(frozen=True, eq=False)
class CboLimitPoint:
    method: str  # "scaled" or "cbo"
    eps: float | None  # None on the CBO baseline rows
    sigma_tilde: float
    mean_linf_error: float
    stats: BatchStats = field(repr=False)


def _fresh_spec(objective: ObjectiveSpec, rng: np.random.Generator) -> ObjectiveSpec:
    # The random test function draws fresh coefficients per realization, first
    # in the run's stream so everything downstream stays aligned.
    if objective.id == ObjectiveId.XSY_RANDOM:
        return replace(objective, xsy_coeffs=rng.uniform(0.0, 1.0, size=objective.dim))
    return objective


def _fitness(spec: ObjectiveSpec, positions: np.ndarray, k: int) -> np.ndarray:
    values = evaluate_many(spec, from_unit(spec, positions))
    if not np.isfinite(values).all():
        raise NumericalError(f"non-finite fitness at step {k}")
    return values


def energy_functional(
    state: ParticleState, x_star: np.ndarray, lam: float, gamma: float
) -> float:
    """Ensemble average of gamma*|x - x*| + |v - lam*(x* - x)| (Euclidean norms).

    Zero exactly when every particle sits at the minimizer with matched
    velocity zero; used as a joint position-velocity convergence diagnostic.
    """
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    x_star = np.asarray(x_star, dtype=float)
    x_err = np.linalg.norm(state.positions - x_star, axis=1)
    v_err = np.linalg.norm(state.velocities - lam * (x_star - state.positions), axis=1)
    return float(np.mean(gamma * x_err + v_err))


def admissible_gamma(
    lam: float, sigma: float, nu: float, d: int
) -> tuple[float, float] | None:
    """Interval of energy weights gamma for which the decay estimate applies.

    Returns ``(nu*4*sigma*sqrt(d)/lam + 2*lam, nu - 2*lam)`` when nonempty,
    else None.  Nonemptiness needs lam strictly above 4*sigma*sqrt(d) and nu
    large enough relative to lam; at equality the interval is empty for all nu.
    """
    if lam <= 0.0 or sigma <= 0.0 or nu <= 0.0 or d < 1:
        raise ValueError("parameters must be positive")
    lo = nu * 4.0 * sigma * math.sqrt(d) / lam + 2.0 * lam
    hi = nu - 2.0 * lam
    if lo > hi:
        return None
    return lo, hi


def sigma_for_scaled(sigma_tilde: float, eps: float, dt: float) -> float:
    """Diffusion gain handed to the scaled variant so it matches a CBO gain sigma_tilde."""
    return sigma_tilde * eps / math.sqrt(dt)


def run_realization(
    objective: ObjectiveSpec,
    cfg: SwarmConfig,
    seed,
    k_max: int,
    stall_tol: float = 1e-4,
    stall_window: int = 500,
    record_consensus: bool = False,
    energy_gamma: float | None = None,
) -> RunResult:
    """Run one realization: uniform init, consensus -> step -> stall check loop.

    Stops at ``k_max`` or once the consensus displacement stays below
    ``stall_tol`` for more than ``stall_window`` consecutive steps.  Final
    metrics are reported in native coordinates.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    rng = np.random.default_rng(seed)
    spec = _fresh_spec(objective, rng)
    state = init_state(cfg, rng)
    x_star_unit = to_unit(spec, spec.minimizer)

    fit = _fitness(spec, state.positions, 0)
    xa = consensus_point(state.positions, fit, cfg.alpha)
    monitor = StallMonitor(stall_tol, stall_window)
    monitor.update(xa)

    consensus_history = [from_unit(spec, xa)] if record_consensus else None
    energy_history = None
    if energy_gamma is not None:
        energy_history = [energy_functional(state, x_star_unit, cfg.lam, energy_gamma)]

    stop_step = k_max
    for k in range(1, k_max + 1):
        state = step(state, xa, cfg, rng)
        fit = _fitness(spec, state.positions, k)
        xa = consensus_point(state.positions, fit, cfg.alpha)
        if consensus_history is not None:
            consensus_history.append(from_unit(spec, xa))
        if energy_history is not None:
            energy_history.append(energy_functional(state, x_star_unit, cfg.lam, energy_gamma))
        if monitor.update(xa):
            stop_step = k
            break

    xa_native = from_unit(spec, xa)
    if not np.isfinite(xa_native).all():
        raise NumericalError("non-finite final consensus")
    linf, _ = consensus_error(xa_native, spec.minimizer)
    gap = evaluate(spec, xa_native) - evaluate(spec, spec.minimizer)
    return RunResult(
        final_consensus=xa_native,
        stop_step=stop_step,
        fitness_gap=gap,
        linf_error=linf,
        seed=seed if isinstance(seed, int) else None,
        consensus_history=consensus_history,
        energy_history=energy_history,
    )


def _run_task(task) -> RunResult:
    objective, cfg, seed, k_max, stall_tol, stall_window = task
    return run_realization(
        objective, cfg, seed, k_max, stall_tol=stall_tol, stall_window=stall_window
    )


def unit_linf_error(objective: ObjectiveSpec, result: RunResult) -> float:
    """Final max-norm error rescaled to unit-box coordinates."""
    half = 0.5 * (objective.native_hi - objective.native_lo)
    return result.linf_error / half


def summarize_batch(
    objective: ObjectiveSpec,
    per_run: list[RunResult],
    success_radius: float = 0.25,
    success_in_unit: bool = False,
) -> BatchStats:
    """Aggregate per-run records; a run succeeds when its max-norm error is
    within ``success_radius`` (native coordinates unless ``success_in_unit``)."""
    if not per_run:
        raise ValueError("needs at least one run")
    if success_in_unit:
        errors = [unit_linf_error(objective, r) for r in per_run]
    else:
        errors = [r.linf_error for r in per_run]
    successes = sum(1 for e in errors if e <= success_radius)
    return BatchStats(
        n_runs=len(per_run),
        success_rate=successes / len(per_run),
        mean_fitness_gap=float(np.mean([r.fitness_gap for r in per_run])),
        mean_linf_error=float(np.mean([r.linf_error for r in per_run])),
        per_run=list(per_run),
    )


def run_batch(
    objective: ObjectiveSpec,
    cfg: SwarmConfig,
    n_runs: int,
    root_seed: int,
    k_max: int = 1000,
    stall_tol: float = 1e-4,
    stall_window: int = 500,
    success_radius: float = 0.25,
    success_in_unit: bool = False,
    n_jobs: int | None = None,
) -> BatchStats:
    """Run ``n_runs`` independent realizations on substreams of ``root_seed``."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    tasks = [
        (objective, cfg, derive_seed(root_seed, i), k_max, stall_tol, stall_window)
        for i in range(n_runs)
    ]
    if n_jobs is not None and n_jobs > 1:
        chunk = max(1, n_runs // (4 * n_jobs))
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            per_run = list(pool.map(_run_task, tasks, chunksize=chunk))
    else:
        per_run = [_run_task(t) for t in tasks]
    return summarize_batch(objective, per_run, success_radius, success_in_unit)


def mean_fitness_gap_excluding(
    per_run: list[RunResult], threshold: float = FITNESS_EXCLUDE_ABOVE
) -> float:
    """Mean fitness gap over runs at or below ``threshold``; NaN if none remain."""
    gaps = [r.fitness_gap for r in per_run if r.fitness_gap <= threshold]
    return float(np.mean(gaps)) if gaps else float("nan")


def sigma_sweep(
    objective: ObjectiveSpec,
    cfg: SwarmConfig,
    sigmas: list[float],
    n_runs: int,
    root_seed: int = 0,
    **batch_kwargs,
) -> list[SweepPoint]:
    """Batch statistics across a grid of diffusion gains.

    The mean fitness gap per grid point excludes runs beyond
    ``FITNESS_EXCLUDE_ABOVE``; success rates and max-norm errors are unfiltered.
    """
    if len(sigmas) == 0:
        raise ValueError("sigmas must be nonempty")
    points = []
    for j, sigma in enumerate(sigmas):
        stats = run_batch(
            objective, replace(cfg, sigma=sigma), n_runs, derive_seed(root_seed, j), **batch_kwargs
        )
        points.append(
            SweepPoint(
                float(sigma),
                stats.success_rate,
                mean_fitness_gap_excluding(stats.per_run),
                stats.mean_linf_error,
                stats,
            )
        )
    return points


def chaos_experiment(
    objective: ObjectiveSpec,
    cfg: SwarmConfig,
    n_values: list[int],
    n_ref: int,
    horizon_T: float,
    n_trials: int,
    root_seed: int = 0,
) -> ChaosReport:
    """Empirical coupling error between interacting systems and the mean-field proxy.

    For each N, an N-particle interacting system is coupled draw-for-draw to
    the first N members of a self-consistent reference cloud of ``n_ref``
    independent particles (the mean-field proxy: its consensus is computed from
    all ``n_ref`` members, the interacting system's from its own N).  Both
    start from identical initial data, so the coupled error is exactly zero at
    step 0.  The per-step stream layout is the cloud's (n_ref uniforms then
    n_ref x d noise); each system consumes the leading N rows of every block.
    """
    n_values = [int(n) for n in n_values]
    if cfg.variant != Variant.PROJECTED_JUMP:
        raise ValueError("chaos experiment requires the projected_jump variant")
    if not 0.0 < cfg.dt <= 1.0:
        raise ValueError("chaos experiment requires dt in (0, 1]")
    if any(b <= a for a, b in zip(n_values, n_values[1:])) or min(n_values) < 1:
        raise ValueError("n_values must be positive and strictly increasing")
    if n_ref < 4 * max(n_values):
        raise ValueError("n_ref must be at least 4 * max(n_values)")
    if horizon_T < 0.0 or n_trials < 1:
        raise ValueError("horizon_T must be >= 0 and n_trials >= 1")

    n_steps = int(round(horizon_T / cfg.dt))
    keep_prob = math.exp(-cfg.nu * cfg.dt)
    cloud_cfg = replace(cfg, n_particles=n_ref)
    errors = np.zeros((len(n_values), n_trials))

    for trial in range(n_trials):
        rng = np.random.default_rng(derive_seed(root_seed, trial))
        spec = _fresh_spec(objective, rng)
        cloud = init_state(cloud_cfg, rng)
        pos_c, vel_c = cloud.positions, cloud.velocities
        systems = {n: (pos_c[:n].copy(), vel_c[:n].copy()) for n in n_values}

        for k in range(n_steps):
            u, xi = step_draws(cfg.noise, n_ref, cfg.dim, rng)
            keep = u < keep_prob
            xa_cloud = consensus_point(pos_c, _fitness(spec, pos_c, k), cfg.alpha)
            updated = {}
            for n, (pos, vel) in systems.items():
                xa = consensus_point(pos, _fitness(spec, pos, k), cfg.alpha)
                updated[n] = apply_jump_step(pos, vel, xa, cfg, keep[:n], xi[:n])
            pos_c, vel_c = apply_jump_step(pos_c, vel_c, xa_cloud, cfg, keep, xi)
            systems = updated

        for idx, n in enumerate(n_values):
            pos, vel = systems[n]
            dx = np.linalg.norm(pos - pos_c[:n], axis=1)
            dv = np.linalg.norm(vel - vel_c[:n], axis=1)
            errors[idx, trial] = float(np.mean(dx + dv))

    means = errors.mean(axis=1)
    if np.all(means > 0.0):
        slope, intercept = np.polyfit(np.log(n_values), np.log(means), 1)
        residuals = np.log(means) - (slope * np.log(n_values) + intercept)
    else:
        slope, intercept = float("nan"), float("nan")
        residuals = np.full(len(n_values), float("nan"))
    return ChaosReport(
        n_values=n_values,
        coupled_errors=[float(m) for m in means],
        fitted_slope=float(slope),
        intercept=float(intercept),
        residuals=[float(r) for r in residuals],
        per_trial=errors,
    )


def cbo_limit_sweep(
    objective: ObjectiveSpec,
    cfg: SwarmConfig,
    eps_values: list[float],
    sigma_tilde_grid: list[float],
    n_runs: int,
    root_seed: int = 0,
    **batch_kwargs,
) -> list[CboLimitPoint]:
    """Scaled-variant error curves across eps against the CBO baseline.

    For each eps the scaled variant runs with sigma = sigma_tilde * eps /
    sqrt(dt).  All methods at one sigma_tilde share the same realization
    substreams (common random numbers), which sharpens the curve comparison
    without biasing either method.
    """
    if len(eps_values) == 0 or len(sigma_tilde_grid) == 0:
        raise ValueError("eps_values and sigma_tilde_grid must be nonempty")
    if any(not 0.0 < e <= 1.0 for e in eps_values):
        raise ValueError("eps_values must lie in (0, 1]")
    if cfg.noise != NoiseKind.GAUSSIAN:
        raise ValueError("the scaling comparison uses Gaussian noise")
    points = []
    for j, st in enumerate(sigma_tilde_grid):
        grid_seed = derive_seed(root_seed, j)
        for eps in eps_values:
            cfg_scaled = replace(
                cfg,
                variant=Variant.SCALED_JUMP,
                eps=float(eps),
                sigma=sigma_for_scaled(st, eps, cfg.dt),
                cbo_sigma_tilde=float(st),
            )
            stats = run_batch(objective, cfg_scaled, n_runs, grid_seed, **batch_kwargs)
            points.append(
                CboLimitPoint("scaled", float(eps), float(st), stats.mean_linf_error, stats)
            )
        cfg_cbo = replace(cfg, variant=Variant.CBO, cbo_sigma_tilde=float(st))
        stats = run_batch(objective, cfg_cbo, n_runs, grid_seed, **batch_kwargs)
        points.append(CboLimitPoint("cbo", None, float(st), stats.mean_linf_error, stats))
    return points

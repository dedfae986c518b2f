"""Command-line experiment runner.

Subcommands select the experiment kind; a YAML config file supplies any subset
of keys and individual flags override it.  Each run writes ``summary.json``,
``config.resolved.json``, and a per-experiment CSV into the output directory.
Exit codes: 0 ok, 2 config error, 3 I/O error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .config import (
    ConfigError,
    ExperimentConfig,
    build_config,
    read_config_file,
    resolved_dict,
    to_swarm_config,
)
from .experiments import (
    NumericalError,
    cbo_limit_sweep,
    chaos_experiment,
    run_batch,
    run_realization,
    sigma_sweep,
    unit_linf_error,
)
from .noise import derive_seed
from .objectives import make_objective

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

THREADS_ENV = "SWARM_JUMP_THREADS"

_SUBCOMMANDS = {
    "single": "single",
    "batch": "batch",
    "sweep-sigma": "sigma_sweep",
    "chaos": "chaos",
    "cbo-limit": "cbo_limit",
}


def _fmt(x: float) -> str:
    # round-trip-exact float formatting for CSV cells (repr is the shortest
    # representation that parses back to the identical double)
    return repr(float(x))


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmjump",
        description="Swarm-based global optimization with jump velocity updates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, kind in _SUBCOMMANDS.items():
        p = sub.add_parser(command, help=f"run the {kind} experiment")
        p.set_defaults(experiment_kind=kind)
        p.add_argument("--config", help="YAML config file; flags override its keys")
        p.add_argument("--objective", help="ackley | rastrigin | griewank | rosenbrock | "
                                           "salomon | schwefel220 | xsy_random")
        p.add_argument("--dim", type=int)
        p.add_argument("--n-particles", type=int)
        p.add_argument("--lam", "--lambda", dest="lam", type=float, help="drift gain")
        p.add_argument("--sigma", type=float, help="diffusion gain (default 0.75 Gaussian / 0.25 Cauchy)")
        p.add_argument("--sigma0", type=float, help="non-degenerate noise floor")
        p.add_argument("--nu", type=float, help="velocity jump frequency")
        p.add_argument("--dt", type=float, help="step size")
        p.add_argument("--alpha", type=float, help="consensus weight exponent")
        p.add_argument("--eps", type=float, help="diffusive scaling parameter")
        p.add_argument("--noise", choices=["gaussian", "cauchy"])
        p.add_argument("--variant", choices=["jump", "projected_jump", "scaled_jump", "cbo"])
        p.add_argument("--cbo-sigma-tilde", dest="cbo_sigma_tilde", type=float)
        p.add_argument("--velocity-init", dest="velocity_init", choices=["zero", "gaussian"])
        p.add_argument("--n-runs", dest="n_runs", type=int)
        p.add_argument("--k-max", dest="k_max", type=int, help="iteration budget per run")
        p.add_argument("--seed", dest="root_seed", type=int, help="root seed of the experiment")
        p.add_argument("--stall-tol", dest="stall_tol", type=float)
        p.add_argument("--stall-window", dest="stall_window", type=int)
        p.add_argument("--success-radius", dest="success_radius", type=float)
        p.add_argument("--success-in-unit", dest="success_in_unit",
                       action=argparse.BooleanOptionalAction, default=None,
                       help="measure the success radius in unit-box coordinates")
        p.add_argument("--out", dest="out_dir", help="output directory")
        p.add_argument("--jobs", type=int, help=f"worker processes (capped by ${THREADS_ENV})")
        p.add_argument("--sigmas", type=_float_list, help="comma list for sweep-sigma")
        p.add_argument("--eps-values", dest="eps_values", type=_float_list)
        p.add_argument("--sigma-tilde-grid", dest="sigma_tilde_grid", type=_float_list)
        p.add_argument("--n-values", dest="n_values", type=_int_list)
        p.add_argument("--n-ref", dest="n_ref", type=int)
        p.add_argument("--horizon", dest="horizon_T", type=float)
        p.add_argument("--n-trials", dest="n_trials", type=int)
    return parser


_OVERRIDE_KEYS = [
    "objective", "dim", "n_particles", "lam", "sigma", "sigma0", "nu", "dt", "alpha",
    "eps", "noise", "variant", "cbo_sigma_tilde", "velocity_init", "n_runs", "k_max",
    "root_seed", "stall_tol", "stall_window", "success_radius", "success_in_unit",
    "out_dir", "jobs", "sigmas", "eps_values", "sigma_tilde_grid", "n_values",
    "n_ref", "horizon_T", "n_trials",
]


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    file_values = read_config_file(args.config) if args.config else {}
    overrides = {"experiment": args.experiment_kind}
    for key in _OVERRIDE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if (
        args.experiment_kind == "chaos"
        and "variant" not in overrides
        and "variant" not in file_values
    ):
        overrides["variant"] = "projected_jump"
    return build_config(file_values, overrides)


def resolve_jobs(cfg: ExperimentConfig) -> int:
    """Worker count: --jobs (default: cpu count), capped by the env var."""
    jobs = cfg.jobs if cfg.jobs is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap is not None:
        try:
            cap_value = int(cap)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
        if cap_value < 1:
            raise ConfigError(f"{THREADS_ENV} must be >= 1")
        jobs = min(jobs, cap_value)
    return max(1, jobs)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _batch_summary(cfg: ExperimentConfig, objective, stats) -> tuple[dict, list[list]]:
    rows = []
    per_run = []
    for i, r in enumerate(stats.per_run):
        err = unit_linf_error(objective, r) if cfg.success_in_unit else r.linf_error
        success = int(err <= cfg.success_radius)
        rows.append([i, r.seed, r.stop_step, _fmt(r.linf_error), _fmt(r.fitness_gap), success])
        per_run.append(
            {
                "run": i,
                "seed": r.seed,
                "stop_step": r.stop_step,
                "linf_error": r.linf_error,
                "fitness_gap": r.fitness_gap,
                "success": bool(success),
            }
        )
    summary = {
        "experiment": cfg.experiment,
        "objective": cfg.objective,
        "n_runs": stats.n_runs,
        "success_rate": stats.success_rate,
        "mean_fitness_gap": stats.mean_fitness_gap,
        "mean_linf_error": stats.mean_linf_error,
        "per_run": per_run,
    }
    return summary, rows


def _execute(cfg: ExperimentConfig, out: Path) -> dict:
    objective = make_objective(cfg.objective, cfg.dim, seed=cfg.root_seed)
    swarm = to_swarm_config(cfg)
    jobs = resolve_jobs(cfg)
    batch_kwargs = dict(
        k_max=cfg.k_max,
        stall_tol=cfg.stall_tol,
        stall_window=cfg.stall_window,
        success_radius=cfg.success_radius,
        success_in_unit=cfg.success_in_unit,
        n_jobs=jobs,
    )

    if cfg.experiment == "single":
        result = run_realization(
            objective,
            swarm,
            derive_seed(cfg.root_seed, 0),
            cfg.k_max,
            stall_tol=cfg.stall_tol,
            stall_window=cfg.stall_window,
            record_consensus=True,
        )
        return {
            "experiment": "single",
            "objective": cfg.objective,
            "seed": result.seed,
            "stop_step": result.stop_step,
            "linf_error": result.linf_error,
            "fitness_gap": result.fitness_gap,
            "final_consensus": [float(v) for v in result.final_consensus],
            "consensus_history": [[float(v) for v in p] for p in result.consensus_history],
        }

    if cfg.experiment == "batch":
        stats = run_batch(objective, swarm, cfg.n_runs, cfg.root_seed, **batch_kwargs)
        summary, rows = _batch_summary(cfg, objective, stats)
        _write_csv(
            out / "batch.csv",
            ["run", "seed", "stop_step", "linf_error", "fitness_gap", "success"],
            rows,
        )
        return summary

    if cfg.experiment == "sigma_sweep":
        points = sigma_sweep(
            objective, swarm, cfg.sigmas, cfg.n_runs, cfg.root_seed, **batch_kwargs
        )
        rows = [
            [_fmt(p.sigma), _fmt(p.success_rate), _fmt(p.mean_fitness_gap), _fmt(p.mean_linf_error)]
            for p in points
        ]
        _write_csv(
            out / "sigma_sweep.csv",
            ["sigma", "success_rate", "mean_fitness_gap", "mean_linf_error"],
            rows,
        )
        return {
            "experiment": "sigma_sweep",
            "objective": cfg.objective,
            "points": [
                {
                    "sigma": p.sigma,
                    "success_rate": p.success_rate,
                    "mean_fitness_gap": p.mean_fitness_gap,
                    "mean_linf_error": p.mean_linf_error,
                }
                for p in points
            ],
        }

    if cfg.experiment == "chaos":
        report = chaos_experiment(
            objective, swarm, cfg.n_values, cfg.n_ref, cfg.horizon_T, cfg.n_trials,
            cfg.root_seed,
        )
        rows = []
        for idx, n in enumerate(report.n_values):
            for trial in range(report.per_trial.shape[1]):
                rows.append([n, trial, _fmt(report.per_trial[idx, trial])])
        _write_csv(out / "chaos.csv", ["N", "trial", "coupled_error"], rows)
        return {
            "experiment": "chaos",
            "objective": cfg.objective,
            "n_values": report.n_values,
            "coupled_errors": report.coupled_errors,
            "fitted_slope": report.fitted_slope,
            "intercept": report.intercept,
            "residuals": report.residuals,
        }

    if cfg.experiment == "cbo_limit":
        points = cbo_limit_sweep(
            objective, swarm, cfg.eps_values, cfg.sigma_tilde_grid, cfg.n_runs,
            cfg.root_seed, **batch_kwargs,
        )
        rows = [
            [_fmt(0.0 if p.eps is None else p.eps), _fmt(p.sigma_tilde),
             _fmt(p.mean_linf_error), p.method]
            for p in points
        ]
        _write_csv(
            out / "cbo_limit.csv",
            ["eps", "sigma_tilde", "mean_linf_error", "method"],
            rows,
        )
        return {
            "experiment": "cbo_limit",
            "objective": cfg.objective,
            "points": [
                {
                    "method": p.method,
                    "eps": p.eps,
                    "sigma_tilde": p.sigma_tilde,
                    "mean_linf_error": p.mean_linf_error,
                }
                for p in points
            ],
        }

    raise ConfigError(f"experiment: unknown experiment {cfg.experiment!r}")


def run(cfg: ExperimentConfig) -> int:
    """Execute the configured experiment and write its artifacts."""
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = _execute(cfg, out)
    _write_json(out / "summary.json", summary)
    _write_json(out / "config.resolved.json", resolved_dict(cfg))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        code = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {Path(cfg.out_dir).resolve()}")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Swarm-based global optimization with jump velocity updates.

Second-order particle dynamics whose velocities are resampled at random times
from a consensus-seeking jump law, with a projected non-degenerate variant, a
diffusively scaled variant, and a first-order CBO baseline, plus a batch
experiment harness and CLI.
"""

from .consensus import consensus_error, consensus_point
from .dynamics import (
    ParticleState,
    SwarmConfig,
    Variant,
    apply_jump_step,
    init_state,
    jump_velocities,
    keep_probability,
    project_box,
    step,
    step_cbo,
    step_projected,
    step_scaled,
    step_swarm_jump,
    velocity_jump_sample,
)
from .experiments import (
    BatchStats,
    ChaosReport,
    CboLimitPoint,
    NumericalError,
    RunResult,
    StallMonitor,
    SweepPoint,
    admissible_gamma,
    cbo_limit_sweep,
    chaos_experiment,
    energy_functional,
    mean_fitness_gap_excluding,
    run_batch,
    run_realization,
    sigma_for_scaled,
    sigma_sweep,
    summarize_batch,
    unit_linf_error,
)
from .noise import NoiseKind, derive_seed, refresh_mask, sample, step_draws
from .objectives import (
    NATIVE_BOUND,
    ObjectiveId,
    ObjectiveSpec,
    evaluate,
    evaluate_many,
    from_unit,
    make_objective,
    register_objective,
    to_unit,
)

__version__ = "0.1.0"

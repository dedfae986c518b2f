"""Particle update rules: jump swarm, projected jump, diffusively scaled jump, CBO.

All step functions are pure maps (state, consensus, config, rng) -> state.  The
consensus point is computed once per step from the pre-step positions and passed
in; positions advance with the updated velocity and are clamped to the search
box afterwards.  Every variant consumes the same per-step draw layout (N refresh
uniforms, then N x d noise), so runs with equal seeds stay couplable across
variants; the CBO update discards the uniform block.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .noise import NoiseKind, sample, step_draws


class Variant(str, Enum):
    JUMP = "jump"
    PROJECTED_JUMP = "projected_jump"
    SCALED_JUMP = "scaled_jump"
    CBO = "cbo"


@dataclass(frozen=True)
class SwarmConfig:
    """All algorithm parameters of one particle system.

    ``sigma0`` is the non-degenerate noise floor (0 recovers the plain jump
    law); ``eps`` only enters the diffusively scaled variant and
    ``cbo_sigma_tilde`` only the CBO baseline.
    """

    n_particles: int = 200
    dim: int = 20
    lam: float = 1.0
    sigma: float = 0.75
    sigma0: float = 0.0
    nu: float = 1.0
    dt: float = 0.1
    alpha: float = 1e5
    eps: float = 1.0
    noise: NoiseKind = NoiseKind.GAUSSIAN
    variant: Variant = Variant.JUMP
    domain_lo: float = -1.0
    domain_hi: float = 1.0
    cbo_sigma_tilde: float = 1.0
    velocity_init: str = "zero"

    def __post_init__(self) -> None:
        object.__setattr__(self, "noise", NoiseKind(self.noise))
        object.__setattr__(self, "variant", Variant(self.variant))
        checks = [
            ("n_particles", self.n_particles >= 1),
            ("dim", self.dim >= 1),
            ("lam", self.lam > 0.0),
            ("sigma", self.sigma >= 0.0),
            ("sigma0", self.sigma0 >= 0.0),
            ("nu", self.nu > 0.0),
            ("dt", self.dt > 0.0),
            ("alpha", self.alpha >= 0.0),
            ("eps", self.eps > 0.0),
            ("domain", self.domain_lo < self.domain_hi),
            ("cbo_sigma_tilde", self.cbo_sigma_tilde >= 0.0),
            ("velocity_init", self.velocity_init in ("zero", "gaussian")),
        ]
        for name, ok in checks:
            if not ok:
                raise ValueError(f"invalid SwarmConfig field: {name}")
        if self.variant == Variant.SCALED_JUMP and self.nu * self.dt / self.eps**2 > 10.0:
            warnings.warn(
                "keep probability exp(-nu*dt/eps^2) underflows toward 0 for this eps; "
                "the scaled update degenerates to refresh-every-step",
                RuntimeWarning,
                stacklevel=2,
            )


@dataclass(frozen=True, eq=False)
class ParticleState:
    """Positions and velocities of N particles in the unit search box, plus step count."""

    positions: np.ndarray
    velocities: np.ndarray
    step: int = 0

    def __post_init__(self) -> None:
        positions = np.asarray(self.positions, dtype=float)
        velocities = np.asarray(self.velocities, dtype=float)
        if positions.ndim != 2 or positions.shape != velocities.shape:
            raise ValueError("positions and velocities must share an (N, d) shape")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "velocities", velocities)


def init_state(cfg: SwarmConfig, rng: np.random.Generator) -> ParticleState:
    """Positions uniform on the search box; velocities zero (or standard normal)."""
    positions = rng.uniform(cfg.domain_lo, cfg.domain_hi, size=(cfg.n_particles, cfg.dim))
    if cfg.velocity_init == "gaussian":
        velocities = rng.standard_normal((cfg.n_particles, cfg.dim))
    else:
        velocities = np.zeros((cfg.n_particles, cfg.dim))
    return ParticleState(positions, velocities, step=0)


def project_box(x: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Euclidean projection onto the box [lo, hi]^d, i.e. a componentwise clamp."""
    if not lo < hi:
        raise ValueError("lo must be < hi")
    return np.clip(x, lo, hi)


def keep_probability(nu: float, dt: float, eps: float | None = None) -> float:
    """Probability that a particle keeps its velocity for one step."""
    rate = nu * dt if eps is None else nu * dt / eps**2
    return math.exp(-rate)


def jump_velocities(
    xa: np.ndarray,
    positions: np.ndarray,
    lam: float,
    sigma: float,
    sigma0: float,
    xi: np.ndarray,
) -> np.ndarray:
    """Freshly drawn velocities: drift toward consensus plus gap-scaled noise.

    Componentwise ``lam * g + sigma * (sigma0 + |g|) * xi`` with g the gap to
    the consensus point.  The absolute-value amplitude equals the signed-factor
    form in law for componentwise-symmetric noise.
    """
    gap = xa - positions
    return lam * gap + sigma * (sigma0 + np.abs(gap)) * xi


def velocity_jump_sample(
    xa: np.ndarray, x: np.ndarray, cfg: SwarmConfig, rng: np.random.Generator
) -> np.ndarray:
    """Draw one jump velocity for a particle (or a batch of rows) at position x."""
    x = np.asarray(x, dtype=float)
    xi = sample(cfg.noise, x.shape, rng)
    return jump_velocities(xa, x, cfg.lam, cfg.sigma, cfg.sigma0, xi)


def apply_jump_step(
    positions: np.ndarray,
    velocities: np.ndarray,
    xa: np.ndarray,
    cfg: SwarmConfig,
    keep: np.ndarray,
    xi: np.ndarray,
    sigma_eff: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """One jump update with externally supplied refresh mask and noise block.

    The explicit-draw form is what the coupling experiments use to feed two
    systems identical randomness per (particle, step).
    """
    sigma = cfg.sigma if sigma_eff is None else sigma_eff
    fresh = jump_velocities(xa, positions, cfg.lam, sigma, cfg.sigma0, xi)
    velocities = np.where(keep[:, None], velocities, fresh)
    positions = project_box(positions + cfg.dt * velocities, cfg.domain_lo, cfg.domain_hi)
    return positions, velocities


def _require_variant(cfg: SwarmConfig, variant: Variant) -> None:
    if cfg.variant != variant:
        raise ValueError(f"config variant is {cfg.variant.value!r}, expected {variant.value!r}")


def _jump_step(
    state: ParticleState,
    xa: np.ndarray,
    cfg: SwarmConfig,
    rng: np.random.Generator,
    keep_prob: float,
    sigma_eff: float,
) -> ParticleState:
    u, xi = step_draws(cfg.noise, cfg.n_particles, cfg.dim, rng)
    positions, velocities = apply_jump_step(
        state.positions, state.velocities, xa, cfg, u < keep_prob, xi, sigma_eff
    )
    return ParticleState(positions, velocities, state.step + 1)


def step_swarm_jump(
    state: ParticleState, xa: np.ndarray, cfg: SwarmConfig, rng: np.random.Generator
) -> ParticleState:
    """Jump swarm step: keep velocity with probability exp(-nu*dt), else redraw;
    transport with the updated velocity; clamp to the box."""
    _require_variant(cfg, Variant.JUMP)
    return _jump_step(state, xa, cfg, rng, keep_probability(cfg.nu, cfg.dt), cfg.sigma)


def step_projected(
    state: ParticleState, xa: np.ndarray, cfg: SwarmConfig, rng: np.random.Generator
) -> ParticleState:
    """Projected, non-degenerate jump step (the variant the theory analyzes).

    Same update as the plain jump step; the non-degeneracy floor ``sigma0`` and
    the box projection are both honored there too, so the two agree
    draw-for-draw when sigma0 = 0.
    """
    _require_variant(cfg, Variant.PROJECTED_JUMP)
    return _jump_step(state, xa, cfg, rng, keep_probability(cfg.nu, cfg.dt), cfg.sigma)


def step_scaled(
    state: ParticleState, xa: np.ndarray, cfg: SwarmConfig, rng: np.random.Generator
) -> ParticleState:
    """Diffusively scaled jump step: refresh rate nu/eps^2, noise amplitude sigma/eps."""
    _require_variant(cfg, Variant.SCALED_JUMP)
    return _jump_step(
        state, xa, cfg, rng, keep_probability(cfg.nu, cfg.dt, cfg.eps), cfg.sigma / cfg.eps
    )


def step_cbo(
    state: ParticleState, xa: np.ndarray, cfg: SwarmConfig, rng: np.random.Generator
) -> ParticleState:
    """First-order CBO baseline step with anisotropic Gaussian noise.

    Velocities are unused.  The noise term is applied with the gap convention
    (consensus minus position), equal in law to the difference convention since
    the noise is symmetric.
    """
    _require_variant(cfg, Variant.CBO)
    if cfg.noise != NoiseKind.GAUSSIAN:
        raise ValueError("CBO baseline requires Gaussian noise")
    _, xi = step_draws(cfg.noise, cfg.n_particles, cfg.dim, rng)
    gap = xa - state.positions
    moved = state.positions + cfg.lam * cfg.dt * gap + cfg.cbo_sigma_tilde * math.sqrt(cfg.dt) * gap * xi
    positions = project_box(moved, cfg.domain_lo, cfg.domain_hi)
    return ParticleState(positions, state.velocities, state.step + 1)


_STEP_FNS = {
    Variant.JUMP: step_swarm_jump,
    Variant.PROJECTED_JUMP: step_projected,
    Variant.SCALED_JUMP: step_scaled,
    Variant.CBO: step_cbo,
}


def step(
    state: ParticleState, xa: np.ndarray, cfg: SwarmConfig, rng: np.random.Generator
) -> ParticleState:
    """Advance one step with the update rule selected by ``cfg.variant``."""
    return _STEP_FNS[cfg.variant](state, xa, cfg, rng)

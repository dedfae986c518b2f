"""Random draws for the particle dynamics: jump noise, refresh events, seed streams.

A realization owns a single sequential numpy Generator and consumes it in a
fixed order: any objective setup draws first, then the initial positions and
(optionally) velocities, then per step exactly N refresh uniforms followed by
the N x d noise block, particle-major.  Keeping the layout identical across
variants lets two runs with equal seeds share their randomness draw-for-draw,
which the coupling experiments rely on.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np


class NoiseKind(str, Enum):
    GAUSSIAN = "gaussian"
    CAUCHY = "cauchy"


def sample(kind: NoiseKind | str, size, rng: np.random.Generator) -> np.ndarray:
    """Draw i.i.d. components from the named componentwise-symmetric distribution."""
    kind = NoiseKind(kind)
    if kind == NoiseKind.GAUSSIAN:
        return rng.standard_normal(size)
    return rng.standard_cauchy(size)


def refresh_mask(nu: float, dt: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Boolean mask of particles whose velocity is redrawn this step.

    Each entry is True with probability 1 - exp(-nu * dt), via a uniform
    compared against the keep probability.
    """
    return rng.random(n) >= math.exp(-nu * dt)


def step_draws(
    kind: NoiseKind | str, n_particles: int, dim: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """The fixed per-step draw layout: N refresh uniforms, then the N x d noise block."""
    uniforms = rng.random(n_particles)
    return uniforms, sample(kind, (n_particles, dim), rng)


def derive_seed(root_seed: int, *path: int) -> int:
    """Deterministically mix a root seed with index path into a 64-bit substream seed.

    Uses numpy's SeedSequence entropy spreading, so substreams for different
    paths are statistically independent.
    """
    state = np.random.SeedSequence((int(root_seed),) + tuple(int(p) for p in path))
    return int(state.generate_state(1, np.uint64)[0])

"""Fitness-weighted consensus point with overflow-safe exponential weights."""

from __future__ import annotations

import numpy as np


def consensus_point(positions: np.ndarray, fitnesses: np.ndarray, alpha: float) -> np.ndarray:
    """Weighted average of particle positions with weights exp(-alpha * fitness).

    The minimum fitness is subtracted before exponentiation, which leaves the
    weight ratios unchanged while making the largest weight exactly 1; this
    keeps the computation finite for arbitrarily large ``alpha`` and fitness
    spreads.  The result lies componentwise in the hull of the positions.
    """
    positions = np.asarray(positions, dtype=float)
    fitnesses = np.asarray(fitnesses, dtype=float)
    if positions.ndim != 2 or positions.shape[0] < 1:
        raise ValueError("positions must be a nonempty (N, d) array")
    if fitnesses.shape != (positions.shape[0],):
        raise ValueError("fitnesses must have shape (N,)")
    if not np.isfinite(fitnesses).all():
        raise ValueError("fitnesses must be finite")
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")
    weights = np.exp(-alpha * (fitnesses - fitnesses.min()))
    return (weights @ positions) / weights.sum()


def consensus_error(xa: np.ndarray, x_star: np.ndarray) -> tuple[float, float]:
    """Return (max-norm, Euclidean) distance between a consensus point and a target."""
    xa = np.asarray(xa, dtype=float)
    x_star = np.asarray(x_star, dtype=float)
    if xa.shape != x_star.shape:
        raise ValueError("dimension mismatch")
    diff = xa - x_star
    return float(np.max(np.abs(diff))), float(np.linalg.norm(diff))

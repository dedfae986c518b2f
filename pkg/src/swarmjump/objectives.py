"""Benchmark objectives with native domains, known minimizers, and unit-box rescaling.

All functions are nonnegative with a global minimum value of 0.  The optimizer
itself works on the cube [-1, 1]^d; points are mapped to each function's native
box only for evaluation, so the formulas below stay in their native coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np


class ObjectiveId(str, Enum):
    ACKLEY = "ackley"
    RASTRIGIN = "rastrigin"
    GRIEWANK = "griewank"
    ROSENBROCK = "rosenbrock"
    SALOMON = "salomon"
    SCHWEFEL220 = "schwefel220"
    XSY_RANDOM = "xsy_random"


# Half-width b of the symmetric native search box [-b, b]^d.
NATIVE_BOUND: dict[ObjectiveId, float] = {
    ObjectiveId.ACKLEY: 5.0,
    ObjectiveId.RASTRIGIN: 5.12,
    ObjectiveId.GRIEWANK: 600.0,
    ObjectiveId.ROSENBROCK: 100.0,
    ObjectiveId.SALOMON: 100.0,
    ObjectiveId.SCHWEFEL220: 100.0,
    ObjectiveId.XSY_RANDOM: 5.0,
}


@dataclass(frozen=True, eq=False)
class ObjectiveSpec:
    """Immutable description of one benchmark instance.

    ``xsy_coeffs`` holds the random weights of the XSY function and is present
    exactly when ``id`` is ``XSY_RANDOM``; all other functions carry no state.
    """

    id: ObjectiveId | str
    dim: int
    native_lo: float
    native_hi: float
    minimizer: np.ndarray
    xsy_coeffs: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.native_lo < self.native_hi:
            raise ValueError("native_lo must be < native_hi")
        minimizer = np.asarray(self.minimizer, dtype=float)
        if minimizer.shape != (self.dim,):
            raise ValueError("minimizer must have shape (dim,)")
        minimizer.setflags(write=False)
        object.__setattr__(self, "minimizer", minimizer)
        is_xsy = self.id == ObjectiveId.XSY_RANDOM
        if is_xsy:
            if self.xsy_coeffs is None:
                raise ValueError("xsy_coeffs required for xsy_random")
            coeffs = np.asarray(self.xsy_coeffs, dtype=float)
            if coeffs.shape != (self.dim,):
                raise ValueError("xsy_coeffs must have shape (dim,)")
            if np.any(coeffs < 0.0) or np.any(coeffs >= 1.0):
                raise ValueError("xsy_coeffs must lie in [0, 1)")
            coeffs.setflags(write=False)
            object.__setattr__(self, "xsy_coeffs", coeffs)
        elif self.xsy_coeffs is not None:
            raise ValueError("xsy_coeffs only valid for xsy_random")


def _ackley(x: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    d = x.shape[1]
    r = np.sqrt(np.sum(x * x, axis=1))
    return (
        -20.0 * np.exp(-0.2 * r / np.sqrt(d))
        - np.exp(np.mean(np.cos(2.0 * np.pi * x), axis=1))
        + 20.0
        + np.e
    )


def _rastrigin(x: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    # variant with a 1/d prefactor
    return np.mean(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=1)


def _griewank(x: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    # product term divides by the 1-based coordinate index i, not sqrt(i)
    idx = np.arange(1, x.shape[1] + 1, dtype=float)
    return 1.0 + np.sum(x * x, axis=1) / 4000.0 - np.prod(np.cos(x / idx), axis=1)


def _rosenbrock(x: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    a, b = x[:, :-1], x[:, 1:]
    return np.sum(100.0 * (b - a * a) ** 2 + (1.0 - a) ** 2, axis=1)


def _salomon(x: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    r = np.sqrt(np.sum(x * x, axis=1))
    return 1.0 - np.cos(2.0 * np.pi * r) + 0.1 * r


def _schwefel220(x: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    return np.sum(np.abs(x), axis=1)


def _xsy_random(x: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    powers = np.arange(1, x.shape[1] + 1, dtype=float)
    return np.sum(spec.xsy_coeffs * np.abs(x) ** powers, axis=1)


_FORMULAS: dict[ObjectiveId, Callable[[np.ndarray, ObjectiveSpec], np.ndarray]] = {
    ObjectiveId.ACKLEY: _ackley,
    ObjectiveId.RASTRIGIN: _rastrigin,
    ObjectiveId.GRIEWANK: _griewank,
    ObjectiveId.ROSENBROCK: _rosenbrock,
    ObjectiveId.SALOMON: _salomon,
    ObjectiveId.SCHWEFEL220: _schwefel220,
    ObjectiveId.XSY_RANDOM: _xsy_random,
}


@dataclass(frozen=True)
class CustomObjective:
    """Entry of the ad-hoc objective registry: a batch evaluator plus metadata."""

    fn: Callable[[np.ndarray], np.ndarray]
    native_lo: float
    native_hi: float
    minimizer: Callable[[int], np.ndarray]


_CUSTOM: dict[str, CustomObjective] = {}


def register_objective(
    name: str,
    fn: Callable[[np.ndarray], np.ndarray],
    native_lo: float,
    native_hi: float,
    minimizer: Callable[[int], np.ndarray],
) -> None:
    """Register a user callback under ``name`` so make_objective can build it.

    ``fn`` must map an (n, d) array of native-coordinate points to (n,) values.
    """
    if name in {m.value for m in ObjectiveId}:
        raise ValueError(f"cannot shadow builtin objective {name!r}")
    _CUSTOM[name] = CustomObjective(fn, native_lo, native_hi, minimizer)


def make_objective(obj_id: ObjectiveId | str, dim: int, seed=None) -> ObjectiveSpec:
    """Build an ObjectiveSpec with Table-standard bounds and minimizer.

    For ``xsy_random`` the coefficient vector is drawn once from ``seed``
    (int, SeedSequence, or Generator) and frozen into the spec.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if isinstance(obj_id, str) and obj_id in _CUSTOM:
        entry = _CUSTOM[obj_id]
        return ObjectiveSpec(
            id=obj_id,
            dim=dim,
            native_lo=entry.native_lo,
            native_hi=entry.native_hi,
            minimizer=np.asarray(entry.minimizer(dim), dtype=float),
        )
    obj_id = ObjectiveId(obj_id)
    bound = NATIVE_BOUND[obj_id]
    if obj_id == ObjectiveId.ROSENBROCK:
        minimizer = np.ones(dim)
    else:
        minimizer = np.zeros(dim)
    coeffs = None
    if obj_id == ObjectiveId.XSY_RANDOM:
        rng = np.random.default_rng(seed)
        coeffs = rng.uniform(0.0, 1.0, size=dim)
    return ObjectiveSpec(
        id=obj_id,
        dim=dim,
        native_lo=-bound,
        native_hi=bound,
        minimizer=minimizer,
        xsy_coeffs=coeffs,
    )


def evaluate_many(spec: ObjectiveSpec, x: np.ndarray) -> np.ndarray:
    """Evaluate the objective at each row of an (n, d) array of native points."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[1] != spec.dim:
        raise ValueError(f"expected points of shape (n, {spec.dim}), got {x.shape}")
    if isinstance(spec.id, ObjectiveId):
        return _FORMULAS[spec.id](x, spec)
    try:
        entry = _CUSTOM[spec.id]
    except KeyError:
        raise ValueError(f"unknown objective {spec.id!r}") from None
    return np.asarray(entry.fn(x), dtype=float)


def evaluate(spec: ObjectiveSpec, x: np.ndarray) -> float:
    """Evaluate the objective at a single native-coordinate point."""
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dim,):
        raise ValueError(f"expected point of shape ({spec.dim},), got {x.shape}")
    return float(evaluate_many(spec, x[None, :])[0])


def to_unit(spec: ObjectiveSpec, x_native: np.ndarray) -> np.ndarray:
    """Affinely map native-box coordinates onto [-1, 1]^d."""
    center = 0.5 * (spec.native_hi + spec.native_lo)
    half = 0.5 * (spec.native_hi - spec.native_lo)
    return (np.asarray(x_native, dtype=float) - center) / half


def from_unit(spec: ObjectiveSpec, x_unit: np.ndarray) -> np.ndarray:
    """Inverse of to_unit: map [-1, 1]^d coordinates back to the native box."""
    center = 0.5 * (spec.native_hi + spec.native_lo)
    half = 0.5 * (spec.native_hi - spec.native_lo)
    return center + half * np.asarray(x_unit, dtype=float)

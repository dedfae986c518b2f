import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swarmjump import (
    NATIVE_BOUND,
    ObjectiveId,
    evaluate,
    evaluate_many,
    from_unit,
    make_objective,
    register_objective,
    to_unit,
)

ALL_IDS = list(ObjectiveId)


@pytest.mark.parametrize("obj_id", ALL_IDS)
@pytest.mark.parametrize("dim", [1, 2, 3, 7, 16, 32])
def test_minimizer_evaluates_to_zero(obj_id, dim):
    spec = make_objective(obj_id, dim, seed=3)
    assert abs(evaluate(spec, spec.minimizer)) <= 1e-12


def test_schwefel_hand_value():
    spec = make_objective("schwefel220", 3)
    assert evaluate(spec, np.array([1.0, -2.0, 0.5])) == 3.5


def test_rastrigin_hand_value():
    # independent oracle: per-term evaluation of the tabulated formula
    oracle = sum(0.5**2 - 10.0 * math.cos(2.0 * math.pi * 0.5) + 10.0 for _ in range(2)) / 2.0
    assert oracle == pytest.approx(20.25, abs=1e-12)
    spec = make_objective("rastrigin", 2)
    assert evaluate(spec, np.array([0.5, 0.5])) == pytest.approx(20.25, abs=1e-12)


def test_rosenbrock_minimizer_is_ones():
    spec = make_objective("rosenbrock", 20)
    assert np.array_equal(spec.minimizer, np.ones(20))
    assert evaluate(spec, np.ones(20)) == 0.0


def test_rosenbrock_dim_one_is_identically_zero():
    spec = make_objective("rosenbrock", 1)
    xs = np.linspace(-100.0, 100.0, 7)[:, None]
    assert np.all(evaluate_many(spec, xs) == 0.0)


def test_ackley_origin_cancellation():
    spec = make_objective("ackley", 20)
    assert abs(evaluate(spec, np.zeros(20))) <= 1e-12


@pytest.mark.parametrize(
    "obj_id,bound",
    [
        ("ackley", 5.0),
        ("rastrigin", 5.12),
        ("griewank", 600.0),
        ("rosenbrock", 100.0),
        ("salomon", 100.0),
        ("schwefel220", 100.0),
        ("xsy_random", 5.0),
    ],
)
def test_native_bounds_table(obj_id, bound):
    spec = make_objective(obj_id, 4, seed=0)
    assert (spec.native_lo, spec.native_hi) == (-bound, bound)
    assert NATIVE_BOUND[ObjectiveId(obj_id)] == bound


def test_griewank_unit_corner_maps_to_600():
    spec = make_objective("griewank", 4)
    assert np.allclose(from_unit(spec, np.ones(4)), 600.0)


def test_unit_center_maps_to_native_center():
    spec = make_objective("schwefel220", 3)
    assert np.array_equal(from_unit(spec, np.zeros(3)), np.zeros(3))


def test_xsy_seeded_determinism():
    a = make_objective("xsy_random", 5, seed=77)
    b = make_objective("xsy_random", 5, seed=77)
    assert np.array_equal(a.xsy_coeffs, b.xsy_coeffs)
    x = np.array([0.3, -1.2, 4.0, 0.0, 2.2])
    assert evaluate(a, x) == evaluate(b, x)
    c = make_objective("xsy_random", 5, seed=78)
    assert not np.array_equal(a.xsy_coeffs, c.xsy_coeffs)


def test_xsy_coeffs_in_unit_interval():
    spec = make_objective("xsy_random", 64, seed=5)
    assert np.all(spec.xsy_coeffs >= 0.0) and np.all(spec.xsy_coeffs < 1.0)


def test_xsy_coeffs_only_for_xsy():
    spec = make_objective("ackley", 3)
    assert spec.xsy_coeffs is None
    with pytest.raises(ValueError):
        make_objective("ackley", 3).__class__(
            id=ObjectiveId.ACKLEY,
            dim=3,
            native_lo=-5.0,
            native_hi=5.0,
            minimizer=np.zeros(3),
            xsy_coeffs=np.zeros(3),
        )


def test_dimension_mismatch_raises():
    spec = make_objective("ackley", 4)
    with pytest.raises(ValueError):
        evaluate(spec, np.zeros(5))
    with pytest.raises(ValueError):
        evaluate_many(spec, np.zeros((3, 5)))


@pytest.mark.parametrize("obj_id", ALL_IDS)
def test_nonnegative_on_random_points(obj_id):
    spec = make_objective(obj_id, 10, seed=11)
    rng = np.random.default_rng(123)
    xs = rng.uniform(spec.native_lo, spec.native_hi, size=(10_000, 10))
    values = evaluate_many(spec, xs)
    assert np.all(values >= -1e-12)


@pytest.mark.parametrize("obj_id", ALL_IDS)
def test_evaluate_matches_evaluate_many(obj_id):
    spec = make_objective(obj_id, 6, seed=9)
    rng = np.random.default_rng(7)
    xs = rng.uniform(spec.native_lo, spec.native_hi, size=(32, 6))
    batch = evaluate_many(spec, xs)
    single = np.array([evaluate(spec, x) for x in xs])
    assert np.array_equal(batch, single)


@settings(deadline=None, max_examples=50)
@given(
    st.integers(min_value=1, max_value=12),
    st.integers(min_value=0, max_value=6),
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
)
def test_unit_round_trip(dim, id_index, coord):
    spec = make_objective(ALL_IDS[id_index], dim, seed=1)
    x = np.full(dim, coord * spec.native_hi)
    back = from_unit(spec, to_unit(spec, x))
    assert np.allclose(back, x, rtol=1e-12, atol=1e-12 * spec.native_hi)


def test_custom_objective_registration():
    register_objective(
        "quartic_test",
        fn=lambda x: np.sum(x**4, axis=1),
        native_lo=-2.0,
        native_hi=2.0,
        minimizer=lambda d: np.zeros(d),
    )
    spec = make_objective("quartic_test", 3)
    assert evaluate(spec, np.array([1.0, 0.0, -1.0])) == 2.0
    assert evaluate(spec, spec.minimizer) == 0.0


def test_custom_cannot_shadow_builtin():
    with pytest.raises(ValueError):
        register_objective(
            "ackley", fn=lambda x: x.sum(1), native_lo=-1, native_hi=1,
            minimizer=lambda d: np.zeros(d),
        )

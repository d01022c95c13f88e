import numpy as np
import pytest

from app.scenes.scenario import (
    FlyingConditions,
    Physics,
    Scenario,
    obstacles_containing,
    point_in_obstacle,
    sample_environment,
    segment_hits_obstacle,
)
from engine.collision import Box, point_in_box, segment_hits_box

UNIT = Box((0, 0, 0), (1, 1, 1))


# ─── Tipos ───
def test_defaults():
    sc = Scenario()
    assert sc.physics.gravity == 9.81
    assert sc.physics.air_density == 1.225
    assert sc.dt == sc.reference_time_step == 0.001
    assert sc.substeps == 1
    assert sc.recording_interval == pytest.approx(0.1)


def test_tick_must_be_integer_multiple_of_dt():
    assert Scenario(reference_time_step=0.01, dt=0.0025).substeps == 4
    with pytest.raises(ValueError):
        Scenario(reference_time_step=0.01, dt=0.003)


def test_max_ticks():
    assert Scenario(reference_time_step=0.01, max_duration=2.0).max_ticks == 200


def test_recording_interval_below_tick_is_rejected():
    with pytest.raises(ValueError):
        Scenario(reference_time_step=0.1, recording_interval=0.05)


def test_recording_interval_defaults_to_tick_when_tick_is_long():
    assert Scenario(reference_time_step=0.5).recording_interval == 0.5


@pytest.mark.parametrize("kwargs", [{"gravity": 0.0}, {"air_density": -1.0}])
def test_physics_rejects_non_positive(kwargs):
    with pytest.raises(ValueError):
        Physics(**kwargs)


def test_box_rejects_min_above_max():
    with pytest.raises(ValueError):
        Box((0, 0, 2), (1, 1, 1))


# ─── sample_environment ───
def test_calm_sample():
    env = sample_environment(Scenario(), (0, 0, 0), 0.0)
    assert env.gravity == 9.81 and env.air_density == 1.225
    assert not env.wind_velocity.any()


def test_wind_is_uniform():
    sc = Scenario(conditions=FlyingConditions(wind_velocity=(3, 0, 0)))
    a = sample_environment(sc, (0, 0, 0), 1.0)
    b = sample_environment(sc, (100, -50, 20), 1.0)
    assert a == b
    assert a.wind_velocity.tolist() == [3, 0, 0]


def test_sample_rejects_negative_time():
    with pytest.raises(ValueError):
        sample_environment(Scenario(), (0, 0, 0), -0.1)


# ─── Obstáculos ───
def test_point_in_obstacle():
    fc = FlyingConditions(obstacles=(UNIT,))
    assert point_in_obstacle(fc, (0.5, 0.5, 0.5))
    assert not point_in_obstacle(fc, (2, 0, 0))
    assert point_in_obstacle(fc, (1, 1, 1))


def test_obstacles_containing_lists_indices():
    fc = FlyingConditions(obstacles=(UNIT, Box((5, 5, 5), (6, 6, 6)), Box((0.5, 0, 0), (2, 1, 1))))
    assert obstacles_containing(fc, (0.75, 0.5, 0.5)) == [0, 2]


def test_segment_hits_obstacle():
    fc = FlyingConditions(obstacles=(UNIT,))
    assert segment_hits_obstacle(fc, (-1, 0.5, 0.5), (2, 0.5, 0.5))
    assert not segment_hits_obstacle(fc, (-1, 5, 5), (2, 5, 5))
    assert segment_hits_obstacle(fc, (0.5, 0.5, 0.5), (0.5, 0.5, 0.5))


def test_segment_touching_a_face_counts():
    assert segment_hits_box(UNIT, (1, -1, 0.5), (1, 2, 0.5))


def test_segment_stopping_short_misses():
    assert not segment_hits_box(UNIT, (-2, 0.5, 0.5), (-0.1, 0.5, 0.5))


def test_slab_agrees_with_dense_sampling():
    rng = np.random.default_rng(5)
    for _ in range(200):
        lo = rng.uniform(-2, 1, size=3)
        box = Box(tuple(lo), tuple(lo + rng.uniform(0.2, 2, size=3)))
        a, b = rng.uniform(-3, 3, size=3), rng.uniform(-3, 3, size=3)
        sampled = any(point_in_box(box, a + t * (b - a)) for t in np.linspace(0, 1, 1000))
        if sampled:
            # amostragem só acha interseções reais
            assert segment_hits_box(box, a, b)

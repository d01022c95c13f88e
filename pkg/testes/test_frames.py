import math

import numpy as np
import pytest

from engine.errors import ConfigurationError
from engine.geometry.frames import (
    EARTH_RADIUS_M,
    IDENTITY,
    InertialFrame,
    geo_project,
    geo_unproject,
    integrate_orientation,
    normalize,
    quat_from_axis_angle,
    quat_from_euler,
    quat_inverse,
    quat_multiply,
    quat_to_euler,
    rotate,
    rotation_matrix,
)


def _random_unit_quaternions(rng, n):
    q = rng.normal(size=(n, 4))
    return q / np.linalg.norm(q, axis=1, keepdims=True)


# ─── rotate ───
def test_rotate_identity_keeps_vector():
    assert np.allclose(rotate(IDENTITY, (1.0, 2.0, 3.0)), (1.0, 2.0, 3.0), atol=1e-15)


def test_rotate_quarter_turn_about_z():
    q = quat_from_axis_angle((0, 0, 1), math.pi / 2)
    assert np.allclose(rotate(q, (1, 0, 0)), (0, 1, 0), atol=1e-12)


def test_rotate_half_turn_about_x():
    q = quat_from_axis_angle((1, 0, 0), math.pi)
    assert np.allclose(rotate(q, (0, 1, 0)), (0, -1, 0), atol=1e-12)


def test_rotate_preserves_norm_and_composes():
    rng = np.random.default_rng(7)
    qs = _random_unit_quaternions(rng, 10_000)
    ps = _random_unit_quaternions(rng, 10_000)
    vs = rng.normal(size=(10_000, 3))
    for q, p, v in zip(qs, ps, vs):
        r = rotate(q, v)
        assert abs(np.linalg.norm(r) - np.linalg.norm(v)) <= 1e-12 * max(1.0, np.linalg.norm(v))
        composed = rotate(quat_multiply(q, p), v)
        assert np.allclose(composed, rotate(q, rotate(p, v)), atol=1e-12)


def test_rotation_matrix_matches_rotate():
    rng = np.random.default_rng(3)
    for q in _random_unit_quaternions(rng, 50):
        v = rng.normal(size=3)
        assert np.allclose(rotation_matrix(q) @ v, rotate(q, v), atol=1e-12)


def test_inverse_undoes_rotation():
    q = quat_from_euler(0.3, -0.2, 1.1)
    v = np.array([0.5, -1.0, 2.0])
    assert np.allclose(rotate(quat_inverse(q), rotate(q, v)), v, atol=1e-12)


def test_euler_round_trip():
    roll, pitch, yaw = quat_to_euler(quat_from_euler(0.1, -0.4, 2.5))
    assert (roll, pitch, yaw) == pytest.approx((0.1, -0.4, 2.5), abs=1e-12)


def test_normalize_rejects_zero():
    with pytest.raises(ValueError):
        normalize((0.0, 0.0, 0.0, 0.0))


# ─── integrate_orientation ───
def test_integrate_zero_rate_is_identity():
    assert np.allclose(integrate_orientation(IDENTITY, (0, 0, 0), 0.01), IDENTITY, atol=1e-15)


def test_integrate_half_turn_about_z():
    q = integrate_orientation(IDENTITY, (0, 0, math.pi), 1.0)
    assert np.allclose(np.abs(q), (0.0, 0.0, 0.0, 1.0), atol=1e-12)


def test_integrate_rejects_non_positive_dt():
    with pytest.raises(ValueError):
        integrate_orientation(IDENTITY, (0, 0, 1), 0.0)


@pytest.mark.slow
def test_integrate_norm_stays_unit_over_a_million_steps():
    q = IDENTITY.copy()
    omega = np.array([0.3, -1.2, 2.1])
    for _ in range(1_000_000):
        q = integrate_orientation(q, omega, 0.001)
    assert abs(np.linalg.norm(q) - 1.0) <= 1e-9


# ─── geo_project ───
def test_geo_project_origin():
    frame = InertialFrame(-3.7319, -38.5267, 15.0)
    assert geo_project(frame, (0, 0, 0)) == pytest.approx((-3.7319, -38.5267, 15.0))


def test_geo_project_origin_on_the_antimeridian():
    frame = InertialFrame(10.0, 180.0, 0.0)
    assert geo_project(frame, (0, 0, 0)) == (10.0, 180.0, 0.0)
    # um passo para oeste fica do mesmo lado; para leste dá a volta
    _, west, _ = geo_project(frame, (-100.0, 0, 0))
    _, east, _ = geo_project(frame, (100.0, 0, 0))
    assert 179.99 < west < 180.0
    assert -180.0 <= east < -179.99
    assert np.allclose(geo_unproject(frame, 10.0, east, 0.0), (100.0, 0.0, 0.0), atol=1e-6)


def test_geo_project_one_degree_north():
    north = math.radians(1.0) * EARTH_RADIUS_M  # ≈ 111 194.9 m
    lat, lon, alt = geo_project(InertialFrame(), (0.0, north, 0.0))
    assert lat == pytest.approx(1.0, abs=1e-9)
    assert lon == pytest.approx(0.0, abs=1e-12)
    assert alt == 0.0


def test_geo_project_altitude_adds():
    _, _, alt = geo_project(InertialFrame(10.0, 20.0, 100.0), (0, 0, 50.0))
    assert alt == pytest.approx(150.0)


def test_geo_unproject_inverts_project():
    frame = InertialFrame(45.0, 179.9, 3.0)
    p = np.array([25_000.0, -4_000.0, 12.0])
    lat, lon, alt = geo_project(frame, p)
    assert -180.0 <= lon < 180.0
    assert np.allclose(geo_unproject(frame, lat, lon, alt), p, atol=1e-6)


def test_geo_project_at_pole_is_configuration_error():
    with pytest.raises(ConfigurationError):
        geo_project(InertialFrame(90.0, 0.0, 0.0), (1.0, 0.0, 0.0))


def test_inertial_frame_rejects_bad_latitude():
    with pytest.raises(ConfigurationError):
        InertialFrame(91.0, 0.0, 0.0)

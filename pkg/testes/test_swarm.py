import logging

import numpy as np
import pytest

from app.entities.drone import MODEL_EVENTS, Drone, EventKind, Swarm
from app.io.scenario_file import assign_routes, load_scenario
from app.scenes.scenario import FlyingConditions, Scenario
from app.scenes.swarm import check_interactions, simulate
from conftest import make_reference_airframe
from engine.collision import Box
from engine.control.controller import Setpoint
from engine.errors import ConfigurationError, DivergenceError
from engine.physics.dynamics import DroneState


def make_drone(drone_id, position, route=()):
    return Drone(drone_id, make_reference_airframe(), DroneState.at_rest(position), route=list(route))


def crossing(scenarios_dir, workers=1):
    sw, sc, mission = load_scenario(scenarios_dir / "two_drone_cross.json")
    assign_routes(sw, mission)
    return sw, sc, simulate(sw, sc, workers=workers)


# ─── check_interactions ───
def test_far_apart_drones_do_not_interact():
    sw = Swarm([make_drone("a", (0, 0, 5)), make_drone("b", (10, 0, 5))])
    assert check_interactions(sw, FlyingConditions(), 0.0) == []


def test_close_pair_emits_one_violation():
    sw = Swarm([make_drone("a", (0, 0, 5)), make_drone("b", (1, 0, 5))])
    events = check_interactions(sw, FlyingConditions(), 0.5)
    assert len(events) == 1
    e = events[0]
    assert e.kind == EventKind.SEPARATION_VIOLATION
    assert e.drone_ids == ("a", "b") and e.t == 0.5
    assert e.payload["distance"] == pytest.approx(1.0)
    assert e.payload["position"] == [0.5, 0.0, 5.0]


def test_three_coincident_drones_emit_three_pairs():
    sw = Swarm([make_drone(k, (0, 0, 5)) for k in "abc"])
    events = check_interactions(sw, FlyingConditions(), 0.0)
    assert [e.drone_ids for e in events] == [("a", "b"), ("a", "c"), ("b", "c")]


def test_violation_is_reported_once_per_episode():
    a, b = make_drone("a", (0, 0, 5)), make_drone("b", (1, 0, 5))
    sw = Swarm([a, b])
    fc = FlyingConditions()
    assert len(check_interactions(sw, fc, 0.0)) == 1
    assert check_interactions(sw, fc, 0.1) == []

    b.state = DroneState.at_rest((5, 0, 5))
    assert check_interactions(sw, fc, 0.2) == []
    b.state = DroneState.at_rest((1, 0, 5))
    assert len(check_interactions(sw, fc, 0.3)) == 1


def test_separation_boundary_is_not_a_violation():
    sw = Swarm([make_drone("a", (0, 0, 5)), make_drone("b", (2, 0, 5))], min_separation=2.0)
    assert check_interactions(sw, FlyingConditions(), 0.0) == []


def test_inactive_drones_are_ignored():
    a, b = make_drone("a", (0, 0, 5)), make_drone("b", (0, 0, 5))
    b.active = False
    assert check_interactions(Swarm([a, b]), FlyingConditions(), 0.0) == []


def test_obstacle_collision():
    fc = FlyingConditions(obstacles=(Box((5, 5, 0), (6, 6, 1)), Box((-1, -1, 0), (1, 1, 10))))
    sw = Swarm([make_drone("a", (0, 0, 5))])
    events = check_interactions(sw, fc, 1.0)
    assert len(events) == 1
    assert events[0].kind == EventKind.OBSTACLE_COLLISION
    assert events[0].payload["obstacle"] == 1
    assert check_interactions(sw, fc, 1.1) == []


# ─── simulate: bordas ───
def test_waypoint_at_start_completes_at_time_zero():
    d = make_drone("a", (0, 0, 5), [Setpoint((0, 0, 5), waypoint_id="w")])
    tr = simulate(Swarm([d]), Scenario(reference_time_step=0.01))
    assert [(e.t, e.kind) for e in tr.events] == [
        (0.0, EventKind.WAYPOINT_REACHED),
        (0.0, EventKind.MISSION_COMPLETE),
    ]
    assert tr.events[0].payload["waypoint_id"] == "w"
    assert d.complete
    assert tr.times("a").tolist() == [0.0]


def test_empty_route_completes_immediately():
    d = make_drone("a", (0, 0, 5))
    tr = simulate(Swarm([d]), Scenario(reference_time_step=0.01))
    assert [e.kind for e in tr.events] == [EventKind.MISSION_COMPLETE]
    assert len(tr.samples["a"]) == 1


def test_stops_at_max_duration():
    d = make_drone("a", (0, 0, 5), [Setpoint((500, 0, 5))])
    sc = Scenario(reference_time_step=0.01, dt=0.005, max_duration=0.5, recording_interval=0.1)
    tr = simulate(Swarm([d]), sc)
    assert not d.complete and d.active
    assert tr.times("a")[-1] == pytest.approx(0.5)
    assert d.state.t == pytest.approx(0.5)


def test_recording_cadence():
    d = make_drone("a", (0, 0, 5), [Setpoint((50, 0, 5))])
    sc = Scenario(reference_time_step=0.01, dt=0.005, max_duration=0.5)
    tr = simulate(Swarm([d]), sc, recording_interval=0.05)
    assert np.allclose(tr.times("a"), np.arange(0.0, 0.5 + 1e-9, 0.05))


def test_ground_contact_deactivates_drone(caplog):
    d = make_drone("a", (0, 0, 1), [Setpoint((0, 0, -5))])
    sc = Scenario(reference_time_step=0.01, dt=0.005, max_duration=5.0)
    with caplog.at_level(logging.WARNING):
        tr = simulate(Swarm([d]), sc)
    events = tr.events_of(EventKind.GROUND_CONTACT)
    assert len(events) == 1
    assert not d.active
    assert tr.samples["a"][-1].position[2] < 0.0
    assert tr.times("a")[-1] == pytest.approx(events[0].t)
    assert "tocou o solo" in caplog.text


def test_divergence_deactivates_drone(monkeypatch):
    def explode(s, a, env, dt, speeds=None):
        raise DivergenceError(s.t + dt)

    monkeypatch.setattr("app.scenes.swarm.step", explode)
    d = make_drone("a", (0, 0, 5), [Setpoint((10, 0, 5))])
    tr = simulate(Swarm([d]), Scenario(reference_time_step=0.01, dt=0.005))
    (event,) = tr.events_of(EventKind.DIVERGENCE)
    assert event.t == pytest.approx(0.01)
    assert event.payload["diverged_at"] == pytest.approx(0.005)
    assert not d.active
    assert tr.times("a").tolist() == pytest.approx([0.0, 0.01])


def test_saturation_warning_is_logged_once(caplog):
    d = make_drone("a", (0, 0, 5), [Setpoint((0, 0, 500))])
    sc = Scenario(reference_time_step=0.01, dt=0.005, max_duration=0.5)
    with caplog.at_level(logging.WARNING, logger="app.scenes.swarm"):
        simulate(Swarm([d]), sc)
    assert caplog.text.count("saturou") == 1


def test_invalid_arguments():
    sw = Swarm([make_drone("a", (0, 0, 5))])
    sc = Scenario(reference_time_step=0.1)
    with pytest.raises(ConfigurationError):
        simulate(sw, sc, workers=0)
    with pytest.raises(ConfigurationError):
        simulate(sw, sc, recording_interval=0.05)


# ─── Cruzamento de dois drones ───
def test_crossing_completes_both_missions(scenarios_dir):
    sw, _, tr = crossing(scenarios_dir)
    assert all(d.complete and d.active for d in sw.drones)
    reached = tr.events_of(EventKind.WAYPOINT_REACHED)
    assert sorted(e.payload["waypoint_id"] for e in reached) == ["leste", "norte"]


def test_crossing_violation_at_closest_approach(scenarios_dir):
    sw, sc, tr = crossing(scenarios_dir)
    tick = sc.reference_time_step
    times = tr.times("a")
    assert np.array_equal(times, tr.times("b"))
    pa, pb = tr.positions("a"), tr.positions("b")

    # rotas espelhadas: "a" cruza x = 0 quando "b" cruza y = 0
    t_a = times[np.argmax(pa[:, 0] >= 0.0)]
    t_b = times[np.argmax(pb[:, 1] >= 0.0)]
    assert abs(t_a - t_b) <= tick + 1e-9

    # com x_a ≈ y_b a distância é √(2x² + Δz²); o episódio abre quando ela cai abaixo do mínimo
    dz = abs(pa[0, 2] - pb[0, 2])
    reach = np.sqrt(sw.min_separation ** 2 - dz ** 2) / np.sqrt(2.0)
    t_entry = times[np.argmax(np.abs(pa[:, 0]) < reach)]
    assert t_entry <= t_a

    violations = tr.events_of(EventKind.SEPARATION_VIOLATION)
    assert len(violations) == 1
    assert violations[0].drone_ids == ("a", "b")
    assert t_entry - 2 * tick - 1e-9 <= violations[0].t <= t_a + 1e-9


def test_crossing_is_deterministic_and_worker_independent(scenarios_dir):
    _, _, serial = crossing(scenarios_dir)
    _, _, again = crossing(scenarios_dir)
    _, _, threaded = crossing(scenarios_dir, workers=2)
    for other in (again, threaded):
        assert [e.as_dict() for e in other.events] == [e.as_dict() for e in serial.events]
        for drone_id in serial.drone_ids:
            assert np.array_equal(other.positions(drone_id), serial.positions(drone_id))
            assert np.array_equal(other.times(drone_id), serial.times(drone_id))


def test_event_order(scenarios_dir):
    _, _, tr = crossing(scenarios_dir)
    times = [e.t for e in tr.events]
    assert times == sorted(times)
    # no mesmo tick, eventos do modelo vêm antes das interações
    for t in set(times):
        kinds = [e.kind for e in tr.events if e.t == t]
        flags = [k in MODEL_EVENTS for k in kinds]
        assert flags == sorted(flags, reverse=True)

# ═══════════════════════════════════════════════════════════════
# SIMULAÇÃO DO ENXAME
# ═══════════════════════════════════════════════════════════════
# Laço de passo travado (lock-step) no tick global do cenário:
#
#   t = 0: captura inicial, interações, primeira gravação
#   para cada tick k:
#     1. para cada drone ativo: comandos → RK4 (substeps) →
#        contato com o solo → captura de waypoint
#     2. interações sobre a fotografia pós-passo
#     3. gravação a cada record_every ticks
#   até todos concluírem/desativarem ou max_ticks
#
# Cada drone só escreve no próprio estado dentro do tick, por isso
# o passo 1 pode rodar num pool de threads sem mudar o resultado.
# ═══════════════════════════════════════════════════════════════

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from itertools import combinations

import numpy as np

from app.entities.drone import Drone, EventKind, SimEvent, Swarm, Trajectory
from app.scenes.scenario import FlyingConditions, Scenario, obstacles_containing, sample_environment
from engine.control.controller import compute_commands, waypoint_reached
from engine.errors import ConfigurationError, DivergenceError
from engine.physics.dynamics import step

logger = logging.getLogger(__name__)


def _position_payload(p) -> list[float]:
    return [float(c) for c in p]


def check_interactions(sw: Swarm, fc: FlyingConditions, t: float) -> list[SimEvent]:
    """
    Separação mínima entre pares e colisão com obstáculos.

    Só o início de cada episódio gera evento: enquanto a violação
    continua, o par (ou drone × obstáculo) fica em sw.episodes.
    Drones desativados não participam.
    """
    active = [d for d in sw.drones if d.active]
    current: set = set()
    events: list[SimEvent] = []

    for a, b in combinations(active, 2):
        distance = float(np.linalg.norm(a.state.position - b.state.position))
        if distance >= sw.min_separation:
            continue
        key = ("pair", a.id, b.id)
        current.add(key)
        if key in sw.episodes:
            continue
        midpoint = 0.5 * (a.state.position + b.state.position)
        events.append(SimEvent(t, (a.id, b.id), EventKind.SEPARATION_VIOLATION, {
            "distance": distance,
            "min_separation": sw.min_separation,
            "position": _position_payload(midpoint),
        }))

    for d in active:
        for k in obstacles_containing(fc, d.state.position):
            key = ("box", d.id, k)
            current.add(key)
            if key in sw.episodes:
                continue
            events.append(SimEvent(t, (d.id,), EventKind.OBSTACLE_COLLISION, {
                "obstacle": k,
                "position": _position_payload(d.state.position),
            }))

    sw.episodes.clear()
    sw.episodes.update(current)
    return events


def _capture(drone: Drone, t: float) -> list[SimEvent]:
    """Avança a rota enquanto o setpoint atual estiver capturado."""
    events = []
    while drone.route_index < len(drone.route):
        sp = drone.route[drone.route_index]
        if not waypoint_reached(drone.state, sp, drone.gains):
            break
        events.append(SimEvent(t, (drone.id,), EventKind.WAYPOINT_REACHED, {
            "waypoint_id": sp.waypoint_id,
            "index": drone.route_index,
            "position": _position_payload(drone.state.position),
        }))
        drone.route_index += 1
    if not drone.complete and drone.route_index >= len(drone.route):
        drone.complete = True
        events.append(SimEvent(t, (drone.id,), EventKind.MISSION_COMPLETE, {
            "position": _position_payload(drone.state.position),
        }))
    return events


class _TickRunner:
    """Passo de um drone num tick; guarda quais drones já saturaram."""

    def __init__(self, sc: Scenario) -> None:
        self.sc = sc
        self.saturated: set[str] = set()

    def __call__(self, drone: Drone, t_next: float) -> list[SimEvent]:
        sc = self.sc
        state = drone.state
        env = sample_environment(sc, state.position, state.t)
        try:
            for _ in range(sc.substeps):
                speeds = compute_commands(state, drone.current_setpoint, drone.airframe, drone.gains,
                                          env.gravity, env.air_density)
                if drone.id not in self.saturated and np.any(speeds >= drone.airframe.max_speeds):
                    self.saturated.add(drone.id)
                    logger.warning("drone %s saturou os rotores em t=%.3f", drone.id, state.t)
                state = step(state, drone.airframe, env, sc.dt, speeds)
                drone.rotor_speeds = speeds
        except DivergenceError as exc:
            logger.warning("drone %s divergiu em t=%.6f; desativado", drone.id, exc.t)
            drone.state = replace(state, t=t_next)
            drone.active = False
            return [SimEvent(t_next, (drone.id,), EventKind.DIVERGENCE, {
                "diverged_at": exc.t,
                "position": _position_payload(state.position),
            })]

        drone.state = replace(state, t=t_next)
        if drone.state.position[2] < 0.0:
            logger.warning("drone %s tocou o solo em t=%.3f", drone.id, t_next)
            drone.active = False
            return [SimEvent(t_next, (drone.id,), EventKind.GROUND_CONTACT, {
                "position": _position_payload(drone.state.position),
            })]
        return _capture(drone, t_next)


def _record_every(sc: Scenario, recording_interval: float) -> int:
    tick = sc.reference_time_step
    if not recording_interval >= tick * (1.0 - 1e-9):
        raise ConfigurationError(
            f"recording_interval ({recording_interval}) menor que o tick ({tick})"
        )
    return max(1, int(round(recording_interval / tick)))


def simulate(
    sw: Swarm,
    sc: Scenario,
    recording_interval: float | None = None,
    workers: int = 1,
) -> Trajectory:
    """
    Simula a rota do enxame inteiro.

    Os drones do enxame são atualizados no lugar (estado, índice da
    rota, flags); a trajetória devolvida guarda as amostras gravadas
    e todos os eventos em ordem de emissão.

    Args:
        sw: enxame (cada drone com sua rota, possivelmente vazia)
        sc: cenário imutável
        recording_interval: intervalo de gravação (s), >= tick; padrão sc.recording_interval
        workers: threads para o passo por drone (1 = serial)

    Raises:
        ConfigurationError: recording_interval menor que o tick ou workers < 1
    """
    if workers < 1:
        raise ConfigurationError(f"workers deve ser >= 1: {workers}")
    if recording_interval is None:
        recording_interval = sc.recording_interval
    record_every = _record_every(sc, recording_interval)
    tick = sc.reference_time_step
    runner = _TickRunner(sc)
    tr = Trajectory(samples={d.id: [] for d in sw.drones})
    sw.episodes.clear()

    # t = 0
    for d in sw.drones:
        d.state = replace(d.state, t=0.0)
        tr.events.extend(_capture(d, 0.0))
    tr.events.extend(check_interactions(sw, sc.conditions, 0.0))
    for d in sw.drones:
        tr.record(d.id, d.state)

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        k = 0
        for k in range(1, sc.max_ticks + 1):
            if all(d.complete or not d.active for d in sw.drones):
                k -= 1
                break
            t_next = k * tick
            flying = [d for d in sw.drones if d.active]
            if pool is None:
                per_drone = [runner(d, t_next) for d in flying]
            else:
                per_drone = list(pool.map(runner, flying, [t_next] * len(flying)))
            for events in per_drone:
                tr.events.extend(events)
            tr.events.extend(check_interactions(sw, sc.conditions, t_next))

            for d in flying:
                if not d.active or k % record_every == 0:
                    tr.record(d.id, d.state)
    finally:
        if pool is not None:
            pool.shutdown()

    # amostra final no último tick simulado
    for d in sw.drones:
        if d.active:
            tr.record(d.id, d.state)

    logger.info("simulação encerrada em t=%.3f s (%d ticks, %d eventos)", k * tick, k, len(tr.events))
    return tr

# ═══════════════════════════════════════════════════════════════
# DRONE, ENXAME, EVENTOS E TRAJETÓRIA
# ═══════════════════════════════════════════════════════════════
# Entidades que o laço do enxame manipula:
# - Drone: fuselagem + estado + ganhos + rota de setpoints
# - Swarm: conjunto de drones (um drone = enxame de um elemento)
# - SimEvent: o que aconteceu, quando e com quem
# - Trajectory: amostras por drone + lista de eventos
# ═══════════════════════════════════════════════════════════════

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import NDArray

import app.constants as constant
from engine.control.controller import ControllerGains, Setpoint
from engine.geometry.frames import quat_to_euler
from engine.physics.airframe import Airframe
from engine.physics.dynamics import DroneState


class EventKind(str, Enum):
    WAYPOINT_REACHED = "waypoint_reached"
    SEPARATION_VIOLATION = "separation_violation"
    OBSTACLE_COLLISION = "obstacle_collision"
    GROUND_CONTACT = "ground_contact"
    MISSION_COMPLETE = "mission_complete"
    DIVERGENCE = "divergence"


# eventos produzidos pelo modelo de cada drone (antes das interações no tick)
MODEL_EVENTS = frozenset({
    EventKind.WAYPOINT_REACHED,
    EventKind.MISSION_COMPLETE,
    EventKind.GROUND_CONTACT,
    EventKind.DIVERGENCE,
})


@dataclass(frozen=True)
class SimEvent:
    t: float
    drone_ids: tuple[str, ...]
    kind: EventKind
    payload: dict = field(default_factory=dict, compare=False, hash=False)

    def as_dict(self) -> dict:
        return {"t": self.t, "drone_ids": list(self.drone_ids), "kind": self.kind.value, **self.payload}


@dataclass(eq=False)
class Drone:
    """
    Um membro do enxame.

    O estado e as velocidades dos rotores pertencem ao laço de
    simulação: só um passo escreve neles por tick.
    """

    id: str
    airframe: Airframe
    state: DroneState
    gains: ControllerGains = field(default_factory=ControllerGains)
    route: list[Setpoint] = field(default_factory=list)
    rotor_speeds: NDArray[np.float64] | None = None
    route_index: int = 0
    complete: bool = False
    active: bool = True
    # alvo de pairar quando não há rota
    hold_position: NDArray[np.float64] | None = field(default=None, repr=False)
    hold_yaw: float | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("drone sem id")
        if self.rotor_speeds is None:
            self.rotor_speeds = np.zeros(len(self.airframe.rotors))
        if self.hold_position is None:
            self.hold_position = self.state.position.copy()
        if self.hold_yaw is None:
            self.hold_yaw = quat_to_euler(self.state.orientation)[2]

    @property
    def current_setpoint(self) -> Setpoint:
        """Próximo waypoint; sem rota (ou rota cumprida) segura a última posição alvo."""
        if self.route_index < len(self.route):
            return self.route[self.route_index]
        if self.route:
            return self.route[-1]
        return Setpoint(self.hold_position, self.hold_yaw)


@dataclass(eq=False)
class Swarm:
    drones: list[Drone]
    min_separation: float = constant.DEFAULT_MIN_SEPARATION
    # episódios de violação em andamento (deduplicação de eventos)
    episodes: set = field(default_factory=set, repr=False)

    def __post_init__(self) -> None:
        if not self.drones:
            raise ValueError("o enxame precisa de pelo menos um drone")
        ids = [d.id for d in self.drones]
        if len(set(ids)) != len(ids):
            raise ValueError(f"ids de drone repetidos: {ids}")
        if not self.min_separation >= 0:
            raise ValueError(f"min_separation deve ser >= 0: {self.min_separation}")

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.drones]

    def by_id(self, drone_id: str) -> Drone:
        for d in self.drones:
            if d.id == drone_id:
                return d
        raise KeyError(drone_id)


@dataclass(eq=False)
class Trajectory:
    """Amostras (tempo crescente) por drone e eventos em ordem de emissão."""

    samples: dict[str, list[DroneState]] = field(default_factory=dict)
    events: list[SimEvent] = field(default_factory=list)

    @property
    def drone_ids(self) -> list[str]:
        return list(self.samples)

    def is_empty(self) -> bool:
        return not any(self.samples.values())

    def times(self, drone_id: str) -> NDArray[np.float64]:
        return np.array([s.t for s in self.samples[drone_id]])

    def positions(self, drone_id: str) -> NDArray[np.float64]:
        states = self.samples[drone_id]
        if not states:
            return np.zeros((0, 3))
        return np.vstack([s.position for s in states])

    def record(self, drone_id: str, state: DroneState) -> None:
        series = self.samples.setdefault(drone_id, [])
        if series and state.t <= series[-1].t:
            return
        series.append(state)

    def events_of(self, kind: EventKind) -> list[SimEvent]:
        return [e for e in self.events if e.kind == kind]

# ═══════════════════════════════════════════════════════
# FUSELAGEM: CORPO + ROTORES
# ═══════════════════════════════════════════════════════
# Definição física de um drone e o mapa entre as velocidades
# dos rotores e a força/torque resultantes no corpo.
#
# Modelo quadrático de rotor (todos empurram em +z do corpo):
#   empuxo   f = c_T · ρ · A · s²
#   reação   τ = ±c_Q · ρ · A · s²   (sinal = sentido de giro)
#
# A alocação (mixer) resolve o sistema linear em s² pela
# pseudo-inversa da matriz 4×n e satura em [0, max_speed].
# ═══════════════════════════════════════════════════════

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from engine.errors import ConfigurationError

logger = logging.getLogger(__name__)

CLOCKWISE = -1
COUNTER_CLOCKWISE = 1


@dataclass(frozen=True)
class Rotor:
    """
    Um rotor: posição no corpo, sentido de giro, área do disco e coeficientes.

    Args:
        position_body: (x, y, z) em metros no referencial do corpo
        spin_direction: CLOCKWISE (-1) ou COUNTER_CLOCKWISE (+1)
        disk_area: m²
        thrust_coefficient: c_T adimensional
        torque_coefficient: c_Q adimensional
        max_speed: rad/s
        current_speed: rad/s, em [0, max_speed]
    """

    position_body: tuple[float, float, float]
    spin_direction: int
    disk_area: float
    thrust_coefficient: float
    torque_coefficient: float
    max_speed: float
    current_speed: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "position_body", tuple(float(c) for c in self.position_body))
        if len(self.position_body) != 3 or not all(math.isfinite(c) for c in self.position_body):
            raise ValueError(f"posição do rotor inválida: {self.position_body}")
        if self.spin_direction not in (CLOCKWISE, COUNTER_CLOCKWISE):
            raise ValueError(f"sentido de giro deve ser ±1: {self.spin_direction}")
        if not self.disk_area > 0:
            raise ValueError(f"disk_area deve ser > 0: {self.disk_area}")
        if not self.thrust_coefficient > 0:
            raise ValueError(f"thrust_coefficient deve ser > 0: {self.thrust_coefficient}")
        if not self.torque_coefficient >= 0:
            raise ValueError(f"torque_coefficient deve ser >= 0: {self.torque_coefficient}")
        if not self.max_speed > 0:
            raise ValueError(f"max_speed deve ser > 0: {self.max_speed}")
        if not 0.0 <= self.current_speed <= self.max_speed:
            raise ValueError(f"current_speed fora de [0, max_speed]: {self.current_speed}")


@dataclass(frozen=True)
class Body:
    """Massa (kg), inércia diagonal (kg·m²) e arrasto linear (N·s/m)."""

    mass: float
    inertia_diagonal: tuple[float, float, float]
    linear_drag: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "inertia_diagonal", tuple(float(c) for c in self.inertia_diagonal))
        if not self.mass > 0:
            raise ValueError(f"mass deve ser > 0: {self.mass}")
        if len(self.inertia_diagonal) != 3 or not all(c > 0 for c in self.inertia_diagonal):
            raise ValueError(f"inércia deve ter 3 componentes > 0: {self.inertia_diagonal}")
        if not self.linear_drag >= 0:
            raise ValueError(f"linear_drag deve ser >= 0: {self.linear_drag}")

    @cached_property
    def inertia(self) -> NDArray[np.float64]:
        return np.array(self.inertia_diagonal)


@dataclass(frozen=True)
class Airframe:
    """Drone físico: um corpo e dois ou mais rotores."""

    body: Body
    rotors: tuple[Rotor, ...]
    _allocators: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotors", tuple(self.rotors))
        if len(self.rotors) < 2:
            raise ValueError("um drone precisa de pelo menos dois rotores")

    # ─── Arrays vetorizados (constantes por fuselagem) ───
    @cached_property
    def positions(self) -> NDArray[np.float64]:
        return np.array([r.position_body for r in self.rotors])

    @cached_property
    def spins(self) -> NDArray[np.float64]:
        return np.array([float(r.spin_direction) for r in self.rotors])

    @cached_property
    def max_speeds(self) -> NDArray[np.float64]:
        return np.array([r.max_speed for r in self.rotors])

    @cached_property
    def _thrust_factors(self) -> NDArray[np.float64]:
        # c_T · A (falta ρ)
        return np.array([r.thrust_coefficient * r.disk_area for r in self.rotors])

    @cached_property
    def _torque_factors(self) -> NDArray[np.float64]:
        return np.array([r.torque_coefficient * r.disk_area for r in self.rotors])

    @property
    def speeds(self) -> NDArray[np.float64]:
        return np.array([r.current_speed for r in self.rotors])

    def with_speeds(self, speeds: ArrayLike) -> "Airframe":
        """Cópia com as velocidades atuais trocadas (rotores continuam imutáveis)."""
        speeds = np.asarray(speeds, dtype=np.float64)
        if speeds.shape != (len(self.rotors),):
            raise ValueError(f"esperado {len(self.rotors)} velocidades, recebido {speeds.shape}")
        rotors = tuple(replace(r, current_speed=float(s)) for r, s in zip(self.rotors, speeds))
        copy = Airframe(self.body, rotors)
        # mesma geometria: as matrizes de alocação continuam válidas
        object.__setattr__(copy, "_allocators", self._allocators)
        return copy

    def _pseudo_inverse(self, air_density: float) -> NDArray[np.float64]:
        cached = self._allocators.get(("pinv", air_density))
        if cached is not None:
            return cached
        m = allocation_matrix(self, air_density)
        rank = np.linalg.matrix_rank(m)
        if rank < min(m.shape):
            raise ConfigurationError(
                f"matriz de alocação com posto {rank} < {min(m.shape)}: geometria de rotores degenerada"
            )
        pinv = np.linalg.pinv(m)
        self._allocators[("pinv", air_density)] = pinv
        return pinv


def _check_density(air_density: float) -> None:
    if not air_density > 0:
        raise ValueError(f"densidade do ar deve ser > 0: {air_density}")


def rotor_thrust(r: Rotor, air_density: float) -> float:
    """Empuxo escalar (N) ao longo de +z do corpo: f = c_T·ρ·A·s²."""
    _check_density(air_density)
    return r.thrust_coefficient * air_density * r.disk_area * r.current_speed ** 2


def allocation_matrix(a: Airframe, air_density: float) -> NDArray[np.float64]:
    """
    Matriz 4×n que leva s² de cada rotor ao vetor (empuxo, τx, τy, τz).

    Para um rotor em r = (x, y, z) com empuxo f ẑ:
    r × f ẑ = (y·f, -x·f, 0); a reação soma ±c_Q·ρ·A·s² em z.
    """
    _check_density(air_density)
    key = ("matrix", air_density)
    cached = a._allocators.get(key)
    if cached is None:
        k = a._thrust_factors * air_density
        kq = a._torque_factors * air_density
        x, y = a.positions[:, 0], a.positions[:, 1]
        cached = np.vstack([k, y * k, -x * k, a.spins * kq])
        cached.flags.writeable = False
        a._allocators[key] = cached
    return cached


def net_wrench_from_speeds(
    a: Airframe, speeds: ArrayLike, air_density: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Força e torque no corpo para velocidades dadas (sem tocar nos rotores)."""
    squared = np.square(np.asarray(speeds, dtype=np.float64))
    w = allocation_matrix(a, air_density) @ squared
    return np.array([0.0, 0.0, w[0]]), w[1:].copy()


def net_wrench(a: Airframe, air_density: float) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Força (N) e torque (N·m) resultantes no referencial do corpo.

    Usa a velocidade atual de cada rotor.
    """
    return net_wrench_from_speeds(a, a.speeds, air_density)


def allocate(
    a: Airframe,
    desired_thrust: float,
    desired_torque: Sequence[float] | NDArray[np.float64],
    air_density: float,
) -> NDArray[np.float64]:
    """
    Inverso de net_wrench: velocidades (rad/s) que produzem a demanda.

    Mínimos quadrados em s² pela pseudo-inversa, depois
    s = √max(s², 0) saturado em [0, max_speed]. A saturação não
    é erro: o voo segue degradado e o evento vai para o log.

    Raises:
        ConfigurationError: matriz de alocação com posto deficiente
    """
    if desired_thrust < 0:
        raise ValueError(f"empuxo desejado deve ser >= 0: {desired_thrust}")
    demand = np.array([desired_thrust, *np.asarray(desired_torque, dtype=np.float64)])
    squared = a._pseudo_inverse(air_density) @ demand
    speeds = np.sqrt(np.maximum(squared, 0.0))
    clamped = np.minimum(speeds, a.max_speeds)
    if np.any(speeds > a.max_speeds) or np.any(squared < 0.0):
        logger.debug("rotores saturados: pedido=%s aplicado=%s", speeds, clamped)
    return clamped


def hover_speed(a: Airframe, gravity: float, air_density: float) -> NDArray[np.float64]:
    """Velocidades de pairar (empuxo m·g, torque nulo)."""
    return allocate(a, a.body.mass * gravity, (0.0, 0.0, 0.0), air_density)

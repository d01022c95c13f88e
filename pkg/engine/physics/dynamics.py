# ═══════════════════════════════════════════════════════
# DINÂMICA DE CORPO RÍGIDO 6-DOF
# ═══════════════════════════════════════════════════════
# Movimento de um drone sob a física do cenário.
#
# Equações (posição/velocidade inerciais, ω no corpo):
#   ṗ = v
#   m·v̇ = R(q)·F_corpo − m·g·ẑ − c·(v − vento)
#   q̇ = ½ q ⊗ (0, ω)
#   I·ω̇ = τ_corpo − ω × (I·ω)
#
# Integração: Runge-Kutta clássico de 4ª ordem, passo fixo.
# As velocidades dos rotores ficam constantes dentro do passo.
# ═══════════════════════════════════════════════════════

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from engine.errors import DivergenceError, NumericalError
from engine.geometry.frames import Vec3, as_vec3, normalize
from engine.physics.airframe import Airframe, net_wrench_from_speeds

STATE_SIZE = 13


@dataclass(frozen=True)
class EnvironmentSample:
    """Fotografia do ambiente num ponto e instante (gravidade, ρ, vento)."""

    gravity: float = 9.81
    air_density: float = 1.225
    wind_velocity: Vec3 = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        if not self.gravity > 0:
            raise ValueError(f"gravity deve ser > 0: {self.gravity}")
        if not self.air_density > 0:
            raise ValueError(f"air_density deve ser > 0: {self.air_density}")
        object.__setattr__(self, "wind_velocity", as_vec3(self.wind_velocity, "vento"))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EnvironmentSample):
            return NotImplemented
        return (
            self.gravity == other.gravity
            and self.air_density == other.air_density
            and bool(np.array_equal(self.wind_velocity, other.wind_velocity))
        )


@dataclass(frozen=True, eq=False)
class DroneState:
    """
    Propriedades internas de um drone no tempo.

    Args:
        t: instante (s)
        position: posição inercial (m)
        velocity: velocidade inercial (m/s)
        orientation: quaternion corpo → inercial
        angular_velocity: velocidade angular no corpo (rad/s)
    """

    t: float
    position: Vec3
    velocity: Vec3
    orientation: NDArray[np.float64]
    angular_velocity: Vec3

    def __post_init__(self) -> None:
        if not math.isfinite(self.t):
            raise NumericalError(f"tempo não finito: {self.t}")
        object.__setattr__(self, "position", as_vec3(self.position, "posição"))
        object.__setattr__(self, "velocity", as_vec3(self.velocity, "velocidade"))
        object.__setattr__(self, "angular_velocity", as_vec3(self.angular_velocity, "omega"))
        q = np.asarray(self.orientation, dtype=np.float64).reshape(4)
        if not np.all(np.isfinite(q)):
            raise NumericalError(f"quaternion não finito: {q}")
        if abs(float(np.linalg.norm(q)) - 1.0) > 1e-6:
            raise ValueError(f"quaternion não normalizado: {q}")
        object.__setattr__(self, "orientation", q)

    @classmethod
    def at_rest(cls, position: ArrayLike, t: float = 0.0, yaw: float = 0.0) -> "DroneState":
        half = 0.5 * yaw
        return cls(t, np.asarray(position, dtype=np.float64), np.zeros(3),
                   np.array([math.cos(half), 0.0, 0.0, math.sin(half)]), np.zeros(3))


@dataclass(frozen=True, eq=False)
class Derivative:
    d_position: Vec3
    d_velocity: Vec3
    d_orientation: NDArray[np.float64]
    d_angular_velocity: Vec3


def pack_state(s: DroneState) -> NDArray[np.float64]:
    return np.concatenate((s.position, s.velocity, s.orientation, s.angular_velocity))


def unpack_state(t: float, y: NDArray[np.float64]) -> DroneState:
    return DroneState(t, y[0:3], y[3:6], y[6:10], y[10:13])


def _rates(
    y: NDArray[np.float64],
    force_body_z: float,
    torque_body: NDArray[np.float64],
    mass: float,
    inertia: NDArray[np.float64],
    drag: float,
    env: EnvironmentSample,
) -> NDArray[np.float64]:
    v = y[3:6]
    w, x, qy, z = y[6:10]
    omega = y[10:13]

    # R(q)·(0, 0, F) = F · terceira coluna de R
    thrust_dir = np.array([
        2.0 * (x * z + w * qy),
        2.0 * (qy * z - w * x),
        1.0 - 2.0 * (x * x + qy * qy),
    ])
    accel = thrust_dir * (force_body_z / mass) - drag / mass * (v - env.wind_velocity)
    accel[2] -= env.gravity

    ox, oy, oz = omega
    q_dot = 0.5 * np.array([
        -x * ox - qy * oy - z * oz,
        w * ox + qy * oz - z * oy,
        w * oy - x * oz + z * ox,
        w * oz + x * oy - qy * ox,
    ])
    omega_dot = (torque_body - np.cross(omega, inertia * omega)) / inertia

    out = np.empty(STATE_SIZE)
    out[0:3] = v
    out[3:6] = accel
    out[6:10] = q_dot
    out[10:13] = omega_dot
    return out


def state_derivative(s: DroneState, a: Airframe, env: EnvironmentSample) -> Derivative:
    """
    Derivada temporal do estado com as velocidades atuais dos rotores.

    Returns:
        Derivative com ṗ, v̇, q̇ e ω̇
    """
    force, torque = net_wrench_from_speeds(a, a.speeds, env.air_density)
    body = a.body
    d = _rates(pack_state(s), force[2], torque, body.mass, body.inertia, body.linear_drag, env)
    return Derivative(d[0:3], d[3:6], d[6:10], d[10:13])


def step(
    s: DroneState,
    a: Airframe,
    env: EnvironmentSample,
    dt: float,
    speeds: ArrayLike | None = None,
) -> DroneState:
    """
    Um passo de RK4 de tamanho dt.

    Args:
        s: estado atual
        a: fuselagem (velocidades atuais dos rotores, se speeds for None)
        env: amostra do ambiente, constante durante o passo
        dt: passo (s), > 0
        speeds: velocidades dos rotores (rad/s) mantidas no passo

    Raises:
        DivergenceError: algum componente do novo estado não é finito
    """
    if not dt > 0.0:
        raise ValueError(f"dt deve ser positivo, recebido {dt}")
    rotor_speeds = a.speeds if speeds is None else np.asarray(speeds, dtype=np.float64)
    force, torque = net_wrench_from_speeds(a, rotor_speeds, env.air_density)
    body = a.body
    args = (force[2], torque, body.mass, body.inertia, body.linear_drag, env)

    y = pack_state(s)
    k1 = _rates(y, *args)
    k2 = _rates(y + 0.5 * dt * k1, *args)
    k3 = _rates(y + 0.5 * dt * k2, *args)
    k4 = _rates(y + dt * k3, *args)
    y_next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    t_next = s.t + dt
    if not np.all(np.isfinite(y_next)):
        raise DivergenceError(t_next)
    y_next[6:10] = normalize(y_next[6:10])
    return unpack_state(t_next, y_next)


def mechanical_energy(s: DroneState, a: Airframe, gravity: float) -> float:
    """½·m·|v|² + m·g·z (J)."""
    m = a.body.mass
    return 0.5 * m * float(s.velocity @ s.velocity) + m * gravity * float(s.position[2])


# ═══════════════════════════════════════════════════════
# CONTROLE EM CASCATA (POSIÇÃO → ATITUDE → ROTORES)
# ═══════════════════════════════════════════════════════
# Segue waypoints convertendo estado + alvo em comandos de
# velocidade para cada rotor.
#
# Cascata (PD, sem integral):
# 1. aceleração desejada  a = Kp·(alvo − p) − Kd·v + g·ẑ
# 2. empuxo = m·(a · z_corpo); roll/pitch por inversão de
#    pequenos ângulos, inclinação saturada em max_tilt
# 3. PD de atitude → torques no corpo (escalados pela inércia)
# 4. allocate() → velocidades dos rotores
# ═══════════════════════════════════════════════════════

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from engine.geometry.frames import Vec3, as_vec3, quat_to_euler, rotate
from engine.math.auxiliary import angle_difference
from engine.physics.airframe import Airframe, allocate
from engine.physics.dynamics import DroneState

# Ganhos ajustados para o drone de referência (1 kg, braços de 0.2 m)
DEFAULT_POSITION_KP = 2.0
DEFAULT_POSITION_KD = 2.8
DEFAULT_ATTITUDE_KP = 60.0
DEFAULT_ATTITUDE_KD = 15.0
DEFAULT_MAX_TILT = 0.5
DEFAULT_CAPTURE_RADIUS = 0.5


@dataclass(frozen=True)
class ControllerGains:
    position_kp: float = DEFAULT_POSITION_KP
    position_kd: float = DEFAULT_POSITION_KD
    attitude_kp: float = DEFAULT_ATTITUDE_KP
    attitude_kd: float = DEFAULT_ATTITUDE_KD
    max_tilt: float = DEFAULT_MAX_TILT
    capture_radius: float = DEFAULT_CAPTURE_RADIUS

    def __post_init__(self) -> None:
        for nome in ("position_kp", "position_kd", "attitude_kp", "attitude_kd"):
            if not getattr(self, nome) >= 0:
                raise ValueError(f"{nome} deve ser >= 0: {getattr(self, nome)}")
        if not 0.0 < self.max_tilt < math.pi / 2:
            raise ValueError(f"max_tilt deve estar em (0, π/2): {self.max_tilt}")
        if not self.capture_radius > 0:
            raise ValueError(f"capture_radius deve ser > 0: {self.capture_radius}")


@dataclass(frozen=True, eq=False)
class Setpoint:
    """Waypoint a perseguir: posição alvo (m) e yaw alvo (rad)."""

    target_position: Vec3
    target_yaw: float = 0.0
    waypoint_id: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "target_position", as_vec3(self.target_position, "alvo"))
        if not math.isfinite(self.target_yaw):
            raise ValueError(f"yaw alvo não finito: {self.target_yaw}")


def attitude_setpoint(
    s: DroneState,
    sp: Setpoint,
    a: Airframe,
    g: ControllerGains,
    gravity: float,
) -> tuple[float, float, float, float]:
    """
    Estágios 1 e 2 da cascata.

    Returns:
        (roll, pitch, yaw) desejados em rad e empuxo total em N
    """
    accel = g.position_kp * (sp.target_position - s.position) - g.position_kd * s.velocity
    accel[2] += gravity

    body_z = rotate(s.orientation, (0.0, 0.0, 1.0))
    thrust = a.body.mass * max(float(accel @ body_z), 0.0)

    # aceleração horizontal no referencial do yaw alvo
    psi = sp.target_yaw
    forward = accel[0] * math.cos(psi) + accel[1] * math.sin(psi)
    left = -accel[0] * math.sin(psi) + accel[1] * math.cos(psi)
    pitch = forward / gravity
    roll = -left / gravity

    tilt = math.hypot(roll, pitch)
    if tilt > g.max_tilt:
        scale = g.max_tilt / tilt
        roll *= scale
        pitch *= scale
    return roll, pitch, psi, thrust


def compute_commands(
    s: DroneState,
    sp: Setpoint,
    a: Airframe,
    g: ControllerGains,
    gravity: float,
    air_density: float,
) -> NDArray[np.float64]:
    """
    Velocidades dos rotores (rad/s) para perseguir o setpoint.

    Função pura: não guarda estado entre chamadas.

    Raises:
        ConfigurationError: vinda da alocação (geometria degenerada)
    """
    roll_d, pitch_d, yaw_d, thrust = attitude_setpoint(s, sp, a, g, gravity)
    roll, pitch, yaw = quat_to_euler(s.orientation)
    error = np.array([
        roll_d - roll,
        pitch_d - pitch,
        angle_difference(yaw_d, yaw),
    ])
    torque = a.body.inertia * (g.attitude_kp * error - g.attitude_kd * s.angular_velocity)
    return allocate(a, thrust, torque, air_density)


def waypoint_reached(s: DroneState, sp: Setpoint, g: ControllerGains) -> bool:
    """Verdadeiro se |p − alvo| ≤ raio de captura (fronteira inclusiva)."""
    return bool(np.linalg.norm(s.position - sp.target_position) <= g.capture_radius)

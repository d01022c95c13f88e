# ═══════════════════════════════════════════════════════
# REFERENCIAIS E ROTAÇÕES 3D
# ═══════════════════════════════════════════════════════
# Álgebra de rotação ligando o referencial do corpo de cada
# drone ao referencial inercial compartilhado do cenário.
#
# Convenções:
# - Quaternions [w, x, y, z], rotação corpo → inercial
# - Referencial inercial ENU (x leste, y norte, z para cima)
# - Corpo: x para frente, y para a esquerda, z para cima
# - Projeção geográfica equiretangular (aproximada, escala local)
# ═══════════════════════════════════════════════════════

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from engine.errors import ConfigurationError, NumericalError

Vec3 = NDArray[np.float64]
Orientation = NDArray[np.float64]

EARTH_RADIUS_M = 6_371_000.0
NORM_TOLERANCE = 1e-9

IDENTITY = np.array([1.0, 0.0, 0.0, 0.0])


def vec3(x: float = 0.0, y: float = 0.0, z: float = 0.0) -> Vec3:
    return np.array([x, y, z], dtype=np.float64)


def as_vec3(v: ArrayLike, name: str = "vetor") -> Vec3:
    """Converte para array (3,) finito; erro se houver NaN/inf."""
    arr = np.asarray(v, dtype=np.float64).reshape(3)
    if not np.all(np.isfinite(arr)):
        raise NumericalError(f"{name} com componente não finita: {arr}")
    return arr


def normalize(q: ArrayLike) -> Orientation:
    q = np.asarray(q, dtype=np.float64)
    n = math.sqrt(float(q @ q))
    if n == 0.0 or not math.isfinite(n):
        raise NumericalError(f"quaternion inválido: {q}")
    return q / n


# ─── Operações com Quaternions ───
def quat_multiply(q1: ArrayLike, q2: ArrayLike) -> Orientation:
    """Produto de Hamilton q1 ⊗ q2."""
    w1, x1, y1, z1 = q1
    w2, x2, y2, z2 = q2
    return np.array([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ])


def quat_inverse(q: ArrayLike) -> Orientation:
    """Inverso de um quaternion unitário (o conjugado)."""
    q = np.asarray(q, dtype=np.float64)
    return np.array([q[0], -q[1], -q[2], -q[3]])


def quat_from_axis_angle(axis: ArrayLike, angle: float) -> Orientation:
    axis = as_vec3(axis, "eixo")
    n = np.linalg.norm(axis)
    if n == 0.0:
        return IDENTITY.copy()
    half = 0.5 * angle
    return np.concatenate(([math.cos(half)], math.sin(half) * axis / n))


def quat_from_euler(roll: float, pitch: float, yaw: float) -> Orientation:
    """Sequência ZYX: yaw em z, depois pitch em y, depois roll em x."""
    qz = quat_from_axis_angle((0.0, 0.0, 1.0), yaw)
    qy = quat_from_axis_angle((0.0, 1.0, 0.0), pitch)
    qx = quat_from_axis_angle((1.0, 0.0, 0.0), roll)
    return normalize(quat_multiply(qz, quat_multiply(qy, qx)))


def quat_to_euler(q: ArrayLike) -> tuple[float, float, float]:
    """
    Ângulos ZYX (roll, pitch, yaw) em radianos.

    O pitch é saturado em ±π/2 para não estourar o asin.
    """
    w, x, y, z = q
    roll = math.atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y))
    s = max(-1.0, min(1.0, 2.0 * (w * y - z * x)))
    pitch = math.asin(s)
    yaw = math.atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z))
    return roll, pitch, yaw


def rotation_matrix(q: ArrayLike) -> NDArray[np.float64]:
    """Matriz 3x3 R(q) tal que R @ v_corpo = v_inercial."""
    w, x, y, z = q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def rotate(q: ArrayLike, v: ArrayLike) -> Vec3:
    """
    Expressa no referencial inercial um vetor dado no corpo.

    Usa v' = v + 2w(u × v) + 2u × (u × v), com q = (w, u),
    que preserva a norma até o arredondamento.

    Args:
        q: orientação normalizada [w, x, y, z]
        v: vetor no referencial do corpo

    Returns:
        vetor rotacionado (3,)
    """
    q = np.asarray(q, dtype=np.float64)
    if not np.all(np.isfinite(q)):
        raise NumericalError(f"quaternion com componente não finita: {q}")
    v = as_vec3(v)
    u = q[1:]
    t = 2.0 * np.cross(u, v)
    return v + q[0] * t + np.cross(u, t)


def integrate_orientation(q: ArrayLike, omega_body: ArrayLike, dt: float) -> Orientation:
    """
    Avança a orientação por dt com velocidade angular de corpo constante.

    Solução exata de q̇ = ½ q ⊗ (0, ω) para ω constante no passo:
    q(t+dt) = q ⊗ exp(½ ω dt), renormalizado.
    """
    if not dt > 0.0:
        raise ValueError(f"dt deve ser positivo, recebido {dt}")
    q = np.asarray(q, dtype=np.float64)
    omega = as_vec3(omega_body, "omega")
    rate = math.sqrt(float(omega @ omega))
    half = 0.5 * rate * dt
    if rate * dt < 1e-12:
        # série de primeira ordem; evita 0/0
        dq = np.concatenate(([1.0], 0.5 * dt * omega))
    else:
        dq = np.concatenate(([math.cos(half)], math.sin(half) * omega / rate))
    return normalize(quat_multiply(q, dq))


# ─── Referencial Inercial e Geo-referenciamento ───
@dataclass(frozen=True)
class InertialFrame:
    """
    Referencial comum do cenário (ENU) ancorado numa origem geográfica.

    Args:
        latitude: graus, [-90, 90]
        longitude: graus, [-180, 180]
        altitude: metros
    """

    latitude: float = 0.0
    longitude: float = 0.0
    altitude: float = 0.0
    axes: str = "ENU"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.latitude) and -90.0 <= self.latitude <= 90.0):
            raise ConfigurationError(f"latitude fora de [-90, 90]: {self.latitude}")
        if not (math.isfinite(self.longitude) and -180.0 <= self.longitude <= 180.0):
            raise ConfigurationError(f"longitude fora de [-180, 180]: {self.longitude}")
        if not math.isfinite(self.altitude):
            raise ConfigurationError("altitude não finita")
        if self.axes != "ENU":
            raise ConfigurationError(f"convenção de eixos não suportada: {self.axes}")

    @property
    def origin_geo(self) -> tuple[float, float, float]:
        return self.latitude, self.longitude, self.altitude


def _wrap_longitude(lon: float) -> float:
    if -180.0 <= lon < 180.0:
        return lon
    return (lon + 180.0) % 360.0 - 180.0


def _meters_per_radian_lon(frame: InertialFrame) -> float:
    if abs(frame.latitude) >= 90.0:
        raise ConfigurationError("projeção indefinida com origem no polo")
    return EARTH_RADIUS_M * math.cos(math.radians(frame.latitude))


def geo_project(frame: InertialFrame, p: ArrayLike) -> tuple[float, float, float]:
    """
    Converte um ponto local ENU (m) em (latitude, longitude, altitude).

    Projeção equiretangular em torno da origem; válida para
    distâncias pequenas (< 100 km) em relação ao raio da Terra.
    """
    p = as_vec3(p, "posição")
    lat = frame.latitude + math.degrees(p[1] / EARTH_RADIUS_M)
    dlon = math.degrees(p[0] / _meters_per_radian_lon(frame))
    # sem deslocamento leste a origem volta intacta (inclusive lon = 180)
    lon = frame.longitude if dlon == 0.0 else _wrap_longitude(frame.longitude + dlon)
    return lat, lon, frame.altitude + float(p[2])


def geo_unproject(frame: InertialFrame, latitude: float, longitude: float, altitude: float) -> Vec3:
    """Inverso de geo_project."""
    dlon = _wrap_longitude(longitude - frame.longitude)
    x = math.radians(dlon) * _meters_per_radian_lon(frame)
    y = math.radians(latitude - frame.latitude) * EARTH_RADIUS_M
    return vec3(x, y, altitude - frame.altitude)

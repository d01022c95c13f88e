# ═══════════════════════════════════════════════════════════════
# CENÁRIO (MUNDO)
# ═══════════════════════════════════════════════════════════════
# O mundo dentro do qual o enxame voa:
# - Física: constantes (gravidade, densidade do ar)
# - Condições de voo: vento uniforme e obstáculos em caixa
# - Referencial inercial com origem geográfica
# - Tempo de referência: o relógio único do enxame
#
# O cenário é imutável durante uma simulação.
# ═══════════════════════════════════════════════════════════════

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

import app.constants as constant
from engine.collision import Box, point_in_box, segment_hits_box
from engine.geometry.frames import InertialFrame, Vec3, as_vec3
from engine.physics.dynamics import EnvironmentSample


@dataclass(frozen=True)
class Physics:
    gravity: float = constant.GRAVITY
    air_density: float = constant.AIR_DENSITY

    def __post_init__(self) -> None:
        if not self.gravity > 0:
            raise ValueError(f"gravity deve ser > 0: {self.gravity}")
        if not self.air_density > 0:
            raise ValueError(f"air_density deve ser > 0: {self.air_density}")


@dataclass(frozen=True, eq=False)
class FlyingConditions:
    """Vento uniforme e constante (m/s) e obstáculos (caixas alinhadas)."""

    wind_velocity: Vec3 = field(default_factory=lambda: np.zeros(3))
    obstacles: tuple[Box, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "wind_velocity", as_vec3(self.wind_velocity, "vento"))
        object.__setattr__(self, "obstacles", tuple(self.obstacles))


@dataclass(frozen=True, eq=False)
class Scenario:
    """
    Mundo completo de uma simulação.

    Args:
        physics: constantes físicas
        conditions: vento e obstáculos
        inertial_frame: origem geográfica do referencial ENU
        reference_time_step: tick global do enxame (s)
        max_duration: duração máxima simulada (s)
        dt: passo do integrador (s); o tick deve ser múltiplo inteiro dele
        recording_interval: intervalo de gravação (s), >= tick; padrão max(0.1, tick)
    """

    physics: Physics = field(default_factory=Physics)
    conditions: FlyingConditions = field(default_factory=FlyingConditions)
    inertial_frame: InertialFrame = field(default_factory=InertialFrame)
    reference_time_step: float = constant.DEFAULT_DT
    max_duration: float = constant.DEFAULT_MAX_DURATION
    dt: float | None = None
    recording_interval: float | None = None

    def __post_init__(self) -> None:
        if not self.reference_time_step > 0:
            raise ValueError(f"reference_time_step deve ser > 0: {self.reference_time_step}")
        if not self.max_duration > 0:
            raise ValueError(f"max_duration deve ser > 0: {self.max_duration}")
        if self.dt is None:
            object.__setattr__(self, "dt", self.reference_time_step)
        if not self.dt > 0:
            raise ValueError(f"dt deve ser > 0: {self.dt}")
        ratio = self.reference_time_step / self.dt
        if abs(ratio - round(ratio)) > 1e-9 * max(ratio, 1.0) or round(ratio) < 1:
            raise ValueError(
                f"reference_time_step ({self.reference_time_step}) deve ser múltiplo inteiro de dt ({self.dt})"
            )
        if self.recording_interval is None:
            object.__setattr__(self, "recording_interval",
                               max(constant.DEFAULT_RECORDING_INTERVAL, self.reference_time_step))
        if not self.recording_interval >= self.reference_time_step * (1.0 - 1e-9):
            raise ValueError(
                f"recording_interval ({self.recording_interval}) menor que o tick ({self.reference_time_step})"
            )

    @property
    def substeps(self) -> int:
        """Passos do integrador por tick."""
        return int(round(self.reference_time_step / self.dt))

    @property
    def max_ticks(self) -> int:
        return int(math.floor(self.max_duration / self.reference_time_step + 1e-9))


def sample_environment(sc: Scenario, position: ArrayLike, t: float) -> EnvironmentSample:
    """
    Constantes e vento num ponto e instante.

    Por enquanto o campo é uniforme e constante; a assinatura já
    aceita (posição, tempo) para campos não uniformes.
    """
    if t < 0:
        raise ValueError(f"t deve ser >= 0: {t}")
    return EnvironmentSample(
        gravity=sc.physics.gravity,
        air_density=sc.physics.air_density,
        wind_velocity=sc.conditions.wind_velocity.copy(),
    )


def point_in_obstacle(fc: FlyingConditions, p: ArrayLike) -> bool:
    """Ponto dentro (inclusive) de algum obstáculo."""
    return any(point_in_box(box, p) for box in fc.obstacles)


def obstacles_containing(fc: FlyingConditions, p: ArrayLike) -> list[int]:
    return [k for k, box in enumerate(fc.obstacles) if point_in_box(box, p)]


def segment_hits_obstacle(fc: FlyingConditions, a: ArrayLike, b: ArrayLike) -> bool:
    """Segmento a→b cruza (inclusive) algum obstáculo."""
    return any(segment_hits_box(box, a, b) for box in fc.obstacles)

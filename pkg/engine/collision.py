# -*- coding: utf-8 -*-
# ═══════════════════════════════════════════════════════
# DETECÇÃO DE COLISÕES
# ═══════════════════════════════════════════════════════
# Geometria de colisão contra obstáculos em caixa alinhada
# aos eixos (AABB), com fronteiras inclusivas.
#
# Usado para:
# - Drone dentro de prédio/obstáculo (evento de colisão)
# - Trecho de rota cortando um obstáculo (rota inviável)
# ═══════════════════════════════════════════════════════

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike


@dataclass(frozen=True)
class Box:
    """
    Caixa alinhada aos eixos.

    Args:
        minimum: canto (x, y, z) mínimo em metros
        maximum: canto (x, y, z) máximo, componente a componente >= minimum
    """

    minimum: tuple[float, float, float]
    maximum: tuple[float, float, float]

    def __post_init__(self) -> None:
        lo = tuple(float(c) for c in self.minimum)
        hi = tuple(float(c) for c in self.maximum)
        if len(lo) != 3 or len(hi) != 3:
            raise ValueError("cantos da caixa precisam de 3 componentes")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"caixa com min > max: {lo} / {hi}")
        object.__setattr__(self, "minimum", lo)
        object.__setattr__(self, "maximum", hi)


def point_in_box(box: Box, p: ArrayLike) -> bool:
    """Ponto dentro da caixa (inclusive na fronteira)."""
    x, y, z = (float(c) for c in np.asarray(p, dtype=np.float64).reshape(3))
    lo, hi = box.minimum, box.maximum
    return lo[0] <= x <= hi[0] and lo[1] <= y <= hi[1] and lo[2] <= z <= hi[2]


def segment_hits_box(box: Box, a: ArrayLike, b: ArrayLike) -> bool:
    """
    Interseção segmento × caixa pelo método das placas (slabs).

    Algoritmo:
    1. Parametriza o segmento como a + t·(b − a), t em [0, 1]
    2. Para cada eixo, recorta [t_min, t_max] entre as duas placas
    3. Intervalo vazio → não há interseção

    Eixos paralelos ao segmento só rejeitam se a origem estiver
    fora da placa. Segmento degenerado (a = b) vira teste de ponto.
    """
    a = np.asarray(a, dtype=np.float64).reshape(3)
    b = np.asarray(b, dtype=np.float64).reshape(3)
    d = b - a
    t_min, t_max = 0.0, 1.0
    for i in range(3):
        lo, hi = box.minimum[i], box.maximum[i]
        if d[i] == 0.0:
            if a[i] < lo or a[i] > hi:
                return False
            continue
        t0 = (lo - a[i]) / d[i]
        t1 = (hi - a[i]) / d[i]
        if t0 > t1:
            t0, t1 = t1, t0
        t_min = max(t_min, t0)
        t_max = min(t_max, t1)
        if t_min > t_max:
            return False
    return True

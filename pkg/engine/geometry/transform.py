# ═══════════════════════════════════════════════════════
# TRANSFORMAÇÕES GEOMÉTRICAS 2D
# ═══════════════════════════════════════════════════════
# Matrizes homogêneas 3x3 (translação, escala, rotação) e a
# composição usada pela prévia: mundo ENU (m) → tela (px).
# ═══════════════════════════════════════════════════════

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable

import numpy as np
from numpy.typing import NDArray


def identidade() -> NDArray[np.float64]:
    return np.eye(3)


def translacao(tx: float, ty: float) -> NDArray[np.float64]:
    return np.array([
        [1.0, 0.0, tx],
        [0.0, 1.0, ty],
        [0.0, 0.0, 1.0],
    ])


def escala(sx: float, sy: float) -> NDArray[np.float64]:
    return np.array([
        [sx, 0.0, 0.0],
        [0.0, sy, 0.0],
        [0.0, 0.0, 1.0],
    ])


def rotacao(theta: float) -> NDArray[np.float64]:
    """Rotação anti-horária de theta radianos."""
    c = math.cos(theta)
    s = math.sin(theta)
    return np.array([
        [c, -s, 0.0],
        [s, c, 0.0],
        [0.0, 0.0, 1.0],
    ])


def compor(*matrizes: NDArray[np.float64]) -> NDArray[np.float64]:
    """compor(A, B, C) aplica C, depois B, depois A."""
    return reduce(np.matmul, matrizes, identidade())


def aplica_transformacao(m: NDArray[np.float64], pontos: Iterable[tuple[float, float]]) -> list[tuple[float, float]]:
    """Transforma pontos (x, y); devolve floats para o recorte arredondar depois."""
    pts = np.asarray(list(pontos), dtype=np.float64).reshape(-1, 2)
    if len(pts) == 0:
        return []
    h = np.hstack((pts, np.ones((len(pts), 1))))
    out = h @ m.T
    return [(float(x), float(y)) for x, y in out[:, :2]]


def rotacionar_pontos_em_torno_de(pontos, cx: float, cy: float, theta: float) -> list[tuple[float, float]]:
    """Rotação em torno do pivô (cx, cy): translada, gira, translada de volta."""
    m = compor(translacao(cx, cy), rotacao(theta), translacao(-cx, -cy))
    return aplica_transformacao(m, pontos)


def mundo_para_tela(
    limites: tuple[float, float, float, float],
    largura: int,
    altura: int,
    margem: int = 0,
) -> NDArray[np.float64]:
    """
    Mapa do retângulo do mundo (xmin, ymin, xmax, ymax) para a tela.

    Escala uniforme (sem distorcer), centrada, com y invertido:
    norte para cima.
    """
    xmin, ymin, xmax, ymax = limites
    w = max(xmax - xmin, 1e-9)
    h = max(ymax - ymin, 1e-9)
    s = min((largura - 2 * margem) / w, (altura - 2 * margem) / h)
    return compor(
        translacao(largura / 2.0, altura / 2.0),
        escala(s, -s),
        translacao(-(xmin + xmax) / 2.0, -(ymin + ymax) / 2.0),
    )

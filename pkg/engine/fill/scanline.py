# -*- coding: utf-8 -*-
# ═══════════════════════════════════════════════════════
# PREENCHIMENTO - SCANLINE
# ═══════════════════════════════════════════════════════
# Preenche polígonos linha a linha: para cada y acha as
# interseções com as arestas, ordena e pinta entre pares.
# Na prévia pinta a projeção (pegada) dos obstáculos.
# ═══════════════════════════════════════════════════════

from __future__ import annotations

import math
from typing import Sequence

from engine.framebuffer import Color, set_pixel


def scanline_fill(superficie, pontos: Sequence[tuple[float, float]], cor_preenchimento: Color) -> None:
    """
    Preenche um polígono com cor sólida.

    Regra y_min <= y < y_max por aresta; arestas horizontais ignoradas.
    """
    if len(pontos) < 3:
        return
    ys = [p[1] for p in pontos]
    y_min = math.floor(min(ys))
    y_max = math.ceil(max(ys))
    n = len(pontos)

    for y in range(y_min, y_max + 1):
        intersecoes_x = []
        for i in range(n):
            x0, y0 = pontos[i]
            x1, y1 = pontos[(i + 1) % n]
            if y0 == y1:
                continue
            if y0 > y1:
                x0, y0, x1, y1 = x1, y1, x0, y0
            if y < y0 or y >= y1:
                continue
            intersecoes_x.append(x0 + (y - y0) * (x1 - x0) / (y1 - y0))

        intersecoes_x.sort()
        for i in range(0, len(intersecoes_x) - 1, 2):
            x_inicio = int(round(intersecoes_x[i]))
            x_fim = int(round(intersecoes_x[i + 1]))
            for x in range(x_inicio, x_fim + 1):
                set_pixel(superficie, x, y, cor_preenchimento)

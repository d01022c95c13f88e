# ═══════════════════════════════════════════════════════════════
# MINIMAPA (PRÉVIA DO VOO VISTA DE CIMA)
# ═══════════════════════════════════════════════════════════════
# Desenha o plano xy do cenário numa pygame.Surface, só com as
# primitivas da engine (set_pixel, Bresenham, ponto médio,
# scanline, Cohen-Sutherland) e salva como PNG.
#
# Elementos:
# - Pegadas cinza: obstáculos
# - Linhas amarelas: rotas planejadas (início → waypoints)
# - Círculos: waypoints (raio de captura, mínimo 2 px)
# - Rastros: posições gravadas, cor interpolada pelo tempo
# - Triângulos brancos: proa (yaw) na posição final
# - Círculos vermelhos: eventos de alerta
# ═══════════════════════════════════════════════════════════════

from __future__ import annotations

import logging
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import pygame  # type: ignore

import assets.colors as color
from app.entities.drone import EventKind, Trajectory
from engine.collision import Box
from engine.errors import ExportError
from engine.fill.scanline import scanline_fill
from engine.framebuffer import clear_color, set_pixel
from engine.geometry.cohen_sutherland import draw_line_clipped
from engine.geometry.frames import quat_to_euler
from engine.geometry.transform import aplica_transformacao, mundo_para_tela, rotacionar_pontos_em_torno_de
from engine.math.auxiliary import interpolar_cor
from engine.raster.circle import draw_circle
from engine.raster.line import desenhar_poligono

logger = logging.getLogger(__name__)

MARGEM = 20
SETA = 7  # px, comprimento da seta de proa
ALERTAS = (EventKind.SEPARATION_VIOLATION, EventKind.OBSTACLE_COLLISION,
           EventKind.GROUND_CONTACT, EventKind.DIVERGENCE)


def _limites(tr: Trajectory, planned: Mapping[str, Sequence], obstacles: Sequence[Box]) -> tuple:
    """Retângulo xy que enquadra tudo que será desenhado (com folga de 1 m)."""
    pts = [tr.positions(d)[:, :2] for d in tr.samples if tr.samples[d]]
    pts += [np.asarray(p, dtype=np.float64).reshape(-1, 3)[:, :2] for p in planned.values() if len(p)]
    for box in obstacles:
        pts.append(np.array([box.minimum[:2], box.maximum[:2]]))
    if not pts:
        return -1.0, -1.0, 1.0, 1.0
    allp = np.vstack(pts)
    (xmin, ymin), (xmax, ymax) = allp.min(axis=0) - 1.0, allp.max(axis=0) + 1.0
    return float(xmin), float(ymin), float(xmax), float(ymax)


def draw_minimap(
    superficie,
    tr: Trajectory,
    planned: Mapping[str, Sequence],
    obstacles: Sequence[Box] = (),
    capture_radius: float = 0.0,
) -> None:
    """
    Desenha a prévia na superfície inteira.

    Args:
        superficie: pygame.Surface de destino
        tr: trajetória simulada
        planned: por drone, posições [início, waypoint, ...] (m)
        obstacles: caixas do cenário
        capture_radius: raio de captura (m) para as marcas de waypoint
    """
    largura, altura = superficie.get_width(), superficie.get_height()
    janela = (0, 0, largura - 1, altura - 1)
    m = mundo_para_tela(_limites(tr, planned, obstacles), largura, altura, MARGEM)
    escala_px = float(m[0, 0])

    clear_color(superficie, color.MAP_BG)

    # ===== OBSTÁCULOS =====
    for box in obstacles:
        (x0, y0, _), (x1, y1, _) = box.minimum, box.maximum
        pegada = aplica_transformacao(m, [(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
        scanline_fill(superficie, pegada, color.ROCK_GRAY)
        desenhar_poligono(superficie, [(round(x), round(y)) for x, y in pegada], color.ROCK_DARK)

    # ===== ROTAS PLANEJADAS =====
    for pontos in planned.values():
        tela = aplica_transformacao(m, [(p[0], p[1]) for p in pontos])
        for (ax, ay), (bx, by) in zip(tela, tela[1:]):
            draw_line_clipped(superficie, ax, ay, bx, by, color.ROUTE_PLANNED, janela)
        for k, (x, y) in enumerate(tela):
            if k == 0:
                draw_circle(superficie, round(x), round(y), 3, color.START)
            else:
                raio = max(2, round(capture_radius * escala_px))
                draw_circle(superficie, round(x), round(y), raio, color.WAYPOINT)

    # ===== RASTROS =====
    t_fim = max((s[-1].t for s in tr.samples.values() if s), default=0.0) or 1.0
    for states in tr.samples.values():
        if not states:
            continue
        tela = aplica_transformacao(m, [(s.position[0], s.position[1]) for s in states])
        for k in range(1, len(tela)):
            cor = interpolar_cor(color.TRACK_START, color.TRACK_END, states[k].t / t_fim)
            (ax, ay), (bx, by) = tela[k - 1], tela[k]
            draw_line_clipped(superficie, ax, ay, bx, by, cor, janela)
        if len(tela) == 1:
            set_pixel(superficie, tela[0][0], tela[0][1], color.TRACK_START)

        # seta de proa: tela tem y invertido, então o yaw gira no sentido oposto
        cx, cy = tela[-1]
        yaw = quat_to_euler(states[-1].orientation)[2]
        seta = [(cx + SETA, cy), (cx - SETA / 2, cy - SETA / 2), (cx - SETA / 2, cy + SETA / 2)]
        seta = rotacionar_pontos_em_torno_de(seta, cx, cy, -yaw)
        desenhar_poligono(superficie, [(round(x), round(y)) for x, y in seta], color.HEADING)

    # ===== EVENTOS =====
    for e in tr.events:
        if e.kind not in ALERTAS or "position" not in e.payload:
            continue
        p = e.payload["position"]
        x, y = aplica_transformacao(m, [(p[0], p[1])])[0]
        draw_circle(superficie, round(x), round(y), 4, color.EVENT_ALERT)


def render_png(
    tr: Trajectory,
    planned: Mapping[str, Sequence],
    path: str | Path,
    size: int = 512,
    obstacles: Sequence[Box] = (),
    capture_radius: float = 0.0,
) -> None:
    """
    Gera a prévia como imagem PNG (sem abrir janela).

    Raises:
        ExportError: trajetória vazia, tamanho inválido ou falha ao gravar
    """
    if tr.is_empty():
        raise ExportError("trajetória vazia: nada a desenhar")
    if size < 2 * MARGEM + 16:
        raise ExportError(f"tamanho da prévia pequeno demais: {size}")
    superficie = pygame.Surface((size, size))
    draw_minimap(superficie, tr, planned, obstacles, capture_radius)
    try:
        pygame.image.save(superficie, str(path))
    except (pygame.error, OSError) as exc:
        raise ExportError(f"não foi possível gravar {path}: {exc}") from exc
    logger.info("prévia gravada em %s (%dx%d px)", path, size, size)

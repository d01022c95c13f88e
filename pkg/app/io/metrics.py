# ═══════════════════════════════════════════════════════════════
# MÉTRICAS DE VOO
# ═══════════════════════════════════════════════════════════════
# RMSE de cada drone em relação à polilinha de referência (ponto
# mais próximo, não pareamento temporal: rotas não têm horário),
# comprimento voado, instantes de captura e contagem de eventos.
# ═══════════════════════════════════════════════════════════════

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.entities.drone import EventKind, Trajectory
from engine.control.controller import Setpoint

logger = logging.getLogger(__name__)


@dataclass
class MetricsReport:
    rmse: dict[str, float] = field(default_factory=dict)
    flown_length: dict[str, float] = field(default_factory=dict)
    capture_times: dict[str, list[float]] = field(default_factory=dict)
    event_counts: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "rmse": self.rmse,
            "flown_length": self.flown_length,
            "capture_times": self.capture_times,
            "event_counts": self.event_counts,
        }


def distance_to_polyline(points: ArrayLike, vertices: ArrayLike) -> NDArray[np.float64]:
    """
    Distância de cada ponto (N×3) ao ponto mais próximo da polilinha (M×3).

    Uma polilinha de um vértice só vira distância a um ponto.
    """
    p = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    v = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
    if len(v) == 1:
        return np.linalg.norm(p - v[0], axis=1)
    a, b = v[:-1], v[1:]
    ab = b - a
    length2 = np.sum(ab * ab, axis=1)
    ap = p[:, None, :] - a[None, :, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.sum(ap * ab[None, :, :], axis=2) / length2[None, :]
    t = np.where(length2[None, :] > 0.0, np.clip(t, 0.0, 1.0), 0.0)
    closest = a[None, :, :] + t[:, :, None] * ab[None, :, :]
    d = np.linalg.norm(p[:, None, :] - closest, axis=2)
    return d.min(axis=1)


def compute_rmse(tr: Trajectory, reference: Mapping[str, Sequence[Setpoint]]) -> MetricsReport:
    """
    Relatório de métricas da trajetória.

    RMSE = √(média dos quadrados da distância de cada amostra ao
    ponto mais próximo da polilinha de referência). Drones sem
    referência (ou com referência vazia) são registrados no log e
    ficam fora do RMSE.
    """
    report = MetricsReport()
    for drone_id in tr.samples:
        positions = tr.positions(drone_id)
        steps = np.diff(positions, axis=0)
        report.flown_length[drone_id] = float(np.linalg.norm(steps, axis=1).sum()) if len(steps) else 0.0

        route = reference.get(drone_id)
        if not route:
            logger.warning("drone %s sem polilinha de referência; RMSE ignorado", drone_id)
            continue
        if len(positions) == 0:
            continue
        vertices = np.vstack([sp.target_position for sp in route])
        d = distance_to_polyline(positions, vertices)
        report.rmse[drone_id] = math.sqrt(float(np.mean(d * d)))

    for drone_id in tr.samples:
        report.capture_times[drone_id] = []
    for e in tr.events_of(EventKind.WAYPOINT_REACHED):
        report.capture_times.setdefault(e.drone_ids[0], []).append(e.t)

    report.event_counts = {kind.value: 0 for kind in EventKind}
    for e in tr.events:
        report.event_counts[e.kind.value] += 1
    return report

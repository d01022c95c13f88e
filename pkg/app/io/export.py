# ═══════════════════════════════════════════════════════════════
# EXPORTAÇÃO DE TRAJETÓRIAS
# ═══════════════════════════════════════════════════════════════
# - GeoJSON (RFC 7946): uma LineString por drone com coordenadas
#   [lon, lat, alt] e um Point por evento; abre no QGIS/Google Maps
# - CSV: uma linha por amostra, agrupada por drone, 9 dígitos
#   significativos; load_trajectory_csv() é o inverso
# ═══════════════════════════════════════════════════════════════

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path

import numpy as np

import app.constants as constant
from app.entities.drone import Trajectory
from engine.errors import ExportError
from engine.geometry.frames import InertialFrame, geo_project
from engine.physics.dynamics import DroneState

logger = logging.getLogger(__name__)


def _lon_lat_alt(frame: InertialFrame, p) -> list[float]:
    lat, lon, alt = geo_project(frame, p)
    return [lon, lat, alt]


def trajectory_features(tr: Trajectory, frame: InertialFrame) -> dict:
    """FeatureCollection da trajetória (sem gravar em disco)."""
    features = []
    for drone_id, states in tr.samples.items():
        if not states:
            continue
        coordinates = [_lon_lat_alt(frame, s.position) for s in states]
        # LineString exige ao menos duas posições
        if len(coordinates) == 1:
            coordinates.append(list(coordinates[0]))
        features.append({
            "type": "Feature",
            "geometry": {"type": "LineString", "coordinates": coordinates},
            "properties": {
                "drone_id": drone_id,
                "times": [s.t for s in states],
            },
        })

    for event in tr.events:
        position = event.payload.get("position")
        if position is None:
            continue
        properties = {k: v for k, v in event.payload.items() if k != "position"}
        properties.update({"t": event.t, "kind": event.kind.value, "drone_ids": list(event.drone_ids)})
        features.append({
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": _lon_lat_alt(frame, position)},
            "properties": properties,
        })
    return {"type": "FeatureCollection", "features": features}


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ExportError(f"não foi possível escrever {path}: {exc.strerror or exc}") from exc


def export_geojson(tr: Trajectory, frame: InertialFrame, path: str | Path) -> None:
    """
    Grava a trajetória como FeatureCollection GeoJSON.

    Raises:
        ExportError: trajetória vazia (nenhum arquivo é criado) ou caminho inválido
    """
    if tr.is_empty():
        raise ExportError("trajetória vazia: nada a exportar")
    path = Path(path)
    document = trajectory_features(tr, frame)
    _write(path, json.dumps(document, indent=2))
    logger.info("GeoJSON gravado em %s (%d features)", path, len(document["features"]))


def _row(drone_id: str, s: DroneState) -> list[str]:
    values = [s.t, *s.position, *s.velocity, *s.orientation, *s.angular_velocity]
    return [drone_id] + [f"{float(v):.{constant.CSV_DIGITS}g}" for v in values]


def export_csv(tr: Trajectory, path: str | Path) -> None:
    """
    Grava uma linha por amostra, ordenada por (drone_id, t).

    Raises:
        ExportError: trajetória vazia ou caminho inválido
    """
    if tr.is_empty():
        raise ExportError("trajetória vazia: nada a exportar")
    path = Path(path)
    rows = [list(constant.CSV_HEADER)]
    for drone_id in sorted(tr.samples):
        for s in sorted(tr.samples[drone_id], key=lambda s: s.t):
            rows.append(_row(drone_id, s))
    try:
        with path.open("w", newline="", encoding="utf-8") as f:
            csv.writer(f, lineterminator="\n").writerows(rows)
    except OSError as exc:
        raise ExportError(f"não foi possível escrever {path}: {exc.strerror or exc}") from exc
    logger.info("CSV gravado em %s (%d amostras)", path, len(rows) - 1)


def load_trajectory_csv(path: str | Path) -> Trajectory:
    """
    Lê um CSV gravado por export_csv (sem eventos).

    Raises:
        ExportError: cabeçalho diferente ou linha malformada
    """
    path = Path(path)
    tr = Trajectory()
    with path.open(newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != constant.CSV_HEADER:
            raise ExportError(f"{path}: cabeçalho inesperado {header}")
        for line, row in enumerate(reader, start=2):
            if len(row) != len(constant.CSV_HEADER):
                raise ExportError(f"{path}:{line}: esperadas {len(constant.CSV_HEADER)} colunas")
            try:
                v = np.array([float(c) for c in row[1:]])
                q = v[7:11] / np.linalg.norm(v[7:11])
                state = DroneState(float(v[0]), v[1:4], v[4:7], q, v[11:14])
            except ValueError as exc:
                raise ExportError(f"{path}:{line}: {exc}") from exc
            tr.samples.setdefault(row[0], []).append(state)
    return tr

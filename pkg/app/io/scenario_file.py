# ═══════════════════════════════════════════════════════════════
# ARQUIVO DE CENÁRIO (JSON)
# ═══════════════════════════════════════════════════════════════
# Lê e escreve o documento que inicializa enxame, cenário e missão.
#
# Validação em duas etapas:
# 1. JSON Schema (assets/scenarios/scenario.schema.json): tipos,
#    chaves obrigatórias/desconhecidas, limites numéricos
# 2. Regras entre campos: tick múltiplo de dt, ids únicos, rota
#    com waypoints existentes, caixas com min <= max
#
# Todo erro nomeia o caminho do campo, ex. `drones[0].body.mass`,
# numa de três categorias: parse_error, schema_violation,
# invariant_violation.
# ═══════════════════════════════════════════════════════════════

from __future__ import annotations

import json
import logging
import math
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Iterable

import numpy as np
from jsonschema import Draft202012Validator, ValidationError

import app.constants as constant
from app.entities.drone import Drone, Swarm
from app.scenes.scenario import FlyingConditions, Physics, Scenario
from engine.collision import Box
from engine.control.controller import ControllerGains, Setpoint
from engine.errors import InvariantViolation, ScenarioError, ScenarioParseError, SchemaViolation
from engine.geometry.frames import InertialFrame, quat_from_euler, quat_to_euler
from engine.physics.airframe import CLOCKWISE, COUNTER_CLOCKWISE, Airframe, Body, Rotor
from engine.physics.dynamics import DroneState
from engine.routing.planner import Mission, RoutePlan, Waypoint, optimize

logger = logging.getLogger(__name__)

SPINS = {"cw": CLOCKWISE, "ccw": COUNTER_CLOCKWISE}

# palavras-chave do schema que fixam limites de valor (o resto é forma)
_BOUND_KEYWORDS = frozenset({"minimum", "maximum", "exclusiveMinimum", "exclusiveMaximum", "minLength"})


# ─── Etapa 1: JSON Schema ───
@lru_cache(maxsize=1)
def scenario_validator() -> Draft202012Validator:
    """Validador do schema publicado junto com os cenários."""
    schema = json.loads(constant.SCENARIO_SCHEMA.read_text(encoding="utf-8"))
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def field_path(parts: Iterable[str | int]) -> str:
    """("drones", 0, "body", "mass") → "drones[0].body.mass"."""
    out = ""
    for p in parts:
        if isinstance(p, int):
            out += f"[{p}]"
        else:
            out += f".{p}" if out else p
    return out


def _path_key(error: ValidationError) -> tuple:
    # índices antes de chaves no mesmo nível; nunca compara int com str
    return tuple((0, p, "") if isinstance(p, int) else (1, 0, p) for p in error.absolute_path)


def _to_scenario_error(error: ValidationError) -> ScenarioError:
    parts = list(error.absolute_path)
    message = error.message
    if error.validator == "required":
        missing = [k for k in error.validator_value if k not in error.instance]
        parts.append(missing[0])
        message = "campo obrigatório ausente"
    elif error.validator == "additionalProperties":
        allowed = error.schema.get("properties", {})
        parts.append(sorted(k for k in error.instance if k not in allowed)[0])
        message = "chave desconhecida"
    kind = InvariantViolation if error.validator in _BOUND_KEYWORDS else SchemaViolation
    return kind(field_path(parts), message)


def validate_document(document: Any) -> None:
    """
    Checa o documento contra o schema; o primeiro erro (pela ordem
    dos caminhos) vira a exceção.

    Raises:
        SchemaViolation: tipo, forma, chave ausente ou desconhecida
        InvariantViolation: número fora do limite
    """
    errors = sorted(scenario_validator().iter_errors(document), key=_path_key)
    if errors:
        raise _to_scenario_error(errors[0])


# ─── Etapa 2: objetos de domínio e regras entre campos ───
def _build(path: str, factory: Callable[..., Any], *args, **kwargs) -> Any:
    """Constrói um objeto de domínio convertendo ValueError em InvariantViolation."""
    try:
        return factory(*args, **kwargs)
    except ValueError as exc:
        raise InvariantViolation(path, str(exc)) from exc


def _vec(values) -> tuple[float, float, float]:
    return tuple(float(c) for c in values)


def _read_rotor(doc: dict, path: str) -> Rotor:
    return _build(
        path, Rotor,
        position_body=_vec(doc["position"]),
        spin_direction=SPINS[doc["spin"]],
        disk_area=float(doc["disk_area"]),
        thrust_coefficient=float(doc["thrust_coefficient"]),
        torque_coefficient=float(doc["torque_coefficient"]),
        max_speed=float(doc["max_speed"]),
    )


def _read_gains(doc: dict, path: str) -> ControllerGains:
    return _build(
        path, ControllerGains,
        position_kp=float(doc.get("position_kp", constant.DEFAULT_POSITION_KP)),
        position_kd=float(doc.get("position_kd", constant.DEFAULT_POSITION_KD)),
        attitude_kp=float(doc.get("attitude_kp", constant.DEFAULT_ATTITUDE_KP)),
        attitude_kd=float(doc.get("attitude_kd", constant.DEFAULT_ATTITUDE_KD)),
        max_tilt=float(doc.get("max_tilt", constant.DEFAULT_MAX_TILT)),
        capture_radius=float(doc.get("capture_radius", constant.DEFAULT_CAPTURE_RADIUS)),
    )


def _read_drone(doc: dict, path: str, waypoints: dict[str, Waypoint]) -> Drone:
    body_doc = doc["body"]
    body = _build(f"{path}.body", Body,
                  mass=float(body_doc["mass"]),
                  inertia_diagonal=_vec(body_doc["inertia"]),
                  linear_drag=float(body_doc.get("linear_drag", 0.0)))
    rotors = tuple(_read_rotor(r, f"{path}.rotors[{i}]") for i, r in enumerate(doc["rotors"]))
    airframe = _build(f"{path}.rotors", Airframe, body, rotors)
    gains = _read_gains(doc.get("gains", {}), f"{path}.gains")

    start = doc["start"]
    state = _build(f"{path}.start", DroneState,
                   0.0,
                   _vec(start["position"]),
                   _vec(start.get("velocity", (0.0, 0.0, 0.0))),
                   quat_from_euler(0.0, 0.0, float(start.get("yaw", 0.0))),
                   _vec(start.get("angular_velocity", (0.0, 0.0, 0.0))))

    route = []
    for j, wp_id in enumerate(doc.get("route", [])):
        if wp_id not in waypoints:
            raise InvariantViolation(f"{path}.route[{j}]", f"waypoint desconhecido: {wp_id!r}")
        w = waypoints[wp_id]
        route.append(Setpoint(w.position, w.yaw, w.id))
    return Drone(doc["id"], airframe, state, gains, route)


def _read_simulation(doc: dict, physics: Physics, conditions: FlyingConditions,
                     frame: InertialFrame) -> Scenario:
    dt = float(doc.get("dt", constant.DEFAULT_DT))
    tick = float(doc.get("reference_time_step", dt))
    ratio = tick / dt
    if round(ratio) < 1 or abs(ratio - round(ratio)) > 1e-9 * max(ratio, 1.0):
        raise InvariantViolation("simulation.reference_time_step",
                                 f"deve ser múltiplo inteiro de dt ({dt:g}), recebido {tick:g}")
    recording = float(doc.get("recording_interval", max(constant.DEFAULT_RECORDING_INTERVAL, tick)))
    if recording < tick * (1.0 - 1e-9):
        raise InvariantViolation("simulation.recording_interval",
                                 f"deve ser >= reference_time_step ({tick:g}), recebido {recording:g}")
    return _build("simulation", Scenario,
                  physics=physics,
                  conditions=conditions,
                  inertial_frame=frame,
                  reference_time_step=tick,
                  max_duration=float(doc.get("max_duration", constant.DEFAULT_MAX_DURATION)),
                  dt=dt,
                  recording_interval=recording)


def _read_obstacles(items: list) -> tuple[Box, ...]:
    return tuple(
        _build(f"flying_conditions.obstacles[{k}].max", Box, _vec(item["min"]), _vec(item["max"]))
        for k, item in enumerate(items)
    )


def _read_waypoints(items: list) -> tuple[Waypoint, ...]:
    waypoints, seen = [], set()
    for i, item in enumerate(items):
        if item["id"] in seen:
            raise InvariantViolation(f"mission.waypoints[{i}].id", f"id de waypoint repetido: {item['id']!r}")
        seen.add(item["id"])
        waypoints.append(Waypoint(item["id"], _vec(item["position"]), item.get("label", ""),
                                  float(item.get("yaw", 0.0))))
    return tuple(waypoints)


def parse_scenario(document: Any) -> tuple[Swarm, Scenario, Mission]:
    """Valida um documento já decodificado; ver load_scenario."""
    validate_document(document)

    ph = document.get("physics", {})
    physics = Physics(gravity=float(ph.get("gravity", constant.GRAVITY)),
                      air_density=float(ph.get("air_density", constant.AIR_DENSITY)))

    fc = document.get("flying_conditions", {})
    conditions = FlyingConditions(np.array(_vec(fc.get("wind", (0.0, 0.0, 0.0)))),
                                  _read_obstacles(fc.get("obstacles", [])))

    fr = document.get("inertial_frame", {})
    frame = _build("inertial_frame", InertialFrame,
                   latitude=float(fr.get("latitude", 0.0)),
                   longitude=float(fr.get("longitude", 0.0)),
                   altitude=float(fr.get("altitude", 0.0)))

    sim = document.get("simulation", {})
    scenario = _read_simulation(sim, physics, conditions, frame)
    min_separation = float(sim.get("min_separation", constant.DEFAULT_MIN_SEPARATION))

    ms = document.get("mission", {})
    waypoints = _read_waypoints(ms.get("waypoints", []))
    max_length = ms.get("max_route_length")
    max_length = math.inf if max_length is None else float(max_length)

    by_id = {w.id: w for w in waypoints}
    drones, seen = [], set()
    for i, item in enumerate(document["drones"]):
        if item["id"] in seen:
            raise InvariantViolation(f"drones[{i}].id", f"id de drone repetido: {item['id']!r}")
        seen.add(item["id"])
        drones.append(_read_drone(item, f"drones[{i}]", by_id))

    swarm = _build("simulation.min_separation", Swarm, drones, min_separation)
    mission = _build("mission", Mission,
                     waypoints=waypoints,
                     starts=tuple(d.state.position for d in drones),
                     max_route_length=max_length,
                     obstacles=conditions.obstacles,
                     drone_ids=tuple(d.id for d in drones))
    return swarm, scenario, mission


def _reject_constant(name: str) -> float:
    raise ScenarioParseError("", f"número não finito no JSON: {name}")


def load_scenario(path: str | Path) -> tuple[Swarm, Scenario, Mission]:
    """
    Inicializa enxame, cenário e missão a partir de um arquivo JSON.

    Raises:
        ScenarioParseError: arquivo ausente, JSON malformado ou NaN/Infinity
        SchemaViolation: tipo errado, campo ausente ou chave desconhecida
        InvariantViolation: valor que fere um invariante do domínio
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError("", f"não foi possível ler {path}: {exc.strerror or exc}") from exc
    try:
        document = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError("", f"JSON inválido (linha {exc.lineno}, coluna {exc.colno}): {exc.msg}") from exc
    swarm, scenario, mission = parse_scenario(document)
    logger.debug("cenário %s: %d drone(s), %d waypoint(s)", path, len(swarm.drones), len(mission.waypoints))
    return swarm, scenario, mission


# ─── Serialização ───
def _floats(v) -> list[float]:
    return [float(c) for c in v]


def _dump_drone(d: Drone) -> dict:
    body = d.airframe.body
    spin_names = {v: k for k, v in SPINS.items()}
    g = d.gains
    entry = {
        "id": d.id,
        "body": {"mass": body.mass, "inertia": list(body.inertia_diagonal), "linear_drag": body.linear_drag},
        "rotors": [
            {
                "position": list(r.position_body),
                "spin": spin_names[r.spin_direction],
                "disk_area": r.disk_area,
                "thrust_coefficient": r.thrust_coefficient,
                "torque_coefficient": r.torque_coefficient,
                "max_speed": r.max_speed,
            }
            for r in d.airframe.rotors
        ],
        "gains": {
            "position_kp": g.position_kp, "position_kd": g.position_kd,
            "attitude_kp": g.attitude_kp, "attitude_kd": g.attitude_kd,
            "max_tilt": g.max_tilt, "capture_radius": g.capture_radius,
        },
        "start": {
            "position": _floats(d.state.position),
            "velocity": _floats(d.state.velocity),
            "angular_velocity": _floats(d.state.angular_velocity),
            "yaw": quat_to_euler(d.state.orientation)[2],
        },
    }
    if d.route:
        entry["route"] = [sp.waypoint_id for sp in d.route]
    return entry


def dump_scenario(sw: Swarm, sc: Scenario, m: Mission) -> dict:
    """Documento JSON equivalente aos objetos (load∘dump é idempotente)."""
    frame = sc.inertial_frame
    return {
        "version": constant.SCENARIO_VERSION,
        "physics": {"gravity": sc.physics.gravity, "air_density": sc.physics.air_density},
        "flying_conditions": {
            "wind": _floats(sc.conditions.wind_velocity),
            "obstacles": [{"min": list(b.minimum), "max": list(b.maximum)} for b in sc.conditions.obstacles],
        },
        "inertial_frame": {"latitude": frame.latitude, "longitude": frame.longitude, "altitude": frame.altitude},
        "simulation": {
            "dt": sc.dt,
            "reference_time_step": sc.reference_time_step,
            "max_duration": sc.max_duration,
            "recording_interval": sc.recording_interval,
            "min_separation": sw.min_separation,
        },
        "drones": [_dump_drone(d) for d in sw.drones],
        "mission": {
            "waypoints": [
                {"id": w.id, "position": _floats(w.position), "label": w.label, "yaw": w.yaw}
                for w in m.waypoints
            ],
            "max_route_length": None if math.isinf(m.max_route_length) else m.max_route_length,
        },
    }


def assign_routes(sw: Swarm, m: Mission) -> RoutePlan | None:
    """
    Dá a cada drone a rota que ele vai voar.

    Se algum drone trouxe rota explícita no arquivo, as rotas dadas
    são voadas como estão e nada é otimizado (devolve None). Caso
    contrário a missão passa por optimize() e o plano é aplicado.
    """
    if any(d.route for d in sw.drones):
        logger.info("rotas explícitas no cenário; otimização ignorada")
        return None
    plan = optimize(m)
    by_id = {w.id: w for w in m.waypoints}
    for d in sw.drones:
        d.route = [Setpoint(by_id[w].position, by_id[w].yaw, w) for w in plan.route_of(d.id)]
        d.route_index = 0
        d.complete = False
    return plan

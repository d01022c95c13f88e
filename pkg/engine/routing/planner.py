# ═══════════════════════════════════════════════════════
# PLANEJAMENTO DE ROTAS DO ENXAME
# ═══════════════════════════════════════════════════════
# Distribui waypoints entre os drones e ordena as visitas.
#
# Etapas de optimize():
# 1. Atribuição por varredura angular em torno do centróide
#    das posições iniciais (partes balanceadas, ±1 waypoint)
# 2. Ordem por drone: vizinho mais próximo e inserção mais
#    barata, cada uma refinada por 2-opt + Or-opt
# 3. Viabilidade: orçamento de comprimento e trechos que
#    cortam obstáculos
#
# Rotas são caminhos abertos (sem retorno ao início).
# Empates são resolvidos pelo id do waypoint (ordem lexicográfica).
# ═══════════════════════════════════════════════════════

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from engine.collision import Box, segment_hits_box
from engine.errors import ConfigurationError, InstanceTooLargeError
from engine.geometry.frames import Vec3, as_vec3

logger = logging.getLogger(__name__)

IMPROVEMENT_EPS = 1e-9
MAX_BRUTE_FORCE_SINGLE = 9
MAX_BRUTE_FORCE_MULTI = 6


@dataclass(frozen=True, eq=False)
class Waypoint:
    id: str
    position: Vec3
    label: str = ""
    yaw: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", as_vec3(self.position, f"waypoint {self.id}"))


@dataclass(frozen=True, eq=False)
class Mission:
    """
    Missão: waypoints, posições iniciais por drone e restrições.

    Args:
        waypoints: waypoints com ids únicos
        starts: posição inicial de cada drone
        max_route_length: orçamento de comprimento por drone (m)
        obstacles: caixas que nenhum trecho pode cortar
        drone_ids: ids dos drones (padrão d0, d1, ...)
    """

    waypoints: tuple[Waypoint, ...]
    starts: tuple[Vec3, ...]
    max_route_length: float = math.inf
    obstacles: tuple[Box, ...] = ()
    drone_ids: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "waypoints", tuple(self.waypoints))
        object.__setattr__(self, "starts", tuple(as_vec3(s, "início") for s in self.starts))
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        if not self.starts:
            raise ConfigurationError("missão sem drones")
        if not self.max_route_length > 0:
            raise ValueError(f"max_route_length deve ser > 0: {self.max_route_length}")
        ids = [w.id for w in self.waypoints]
        if len(set(ids)) != len(ids):
            raise ValueError("ids de waypoint repetidos na missão")
        drone_ids = tuple(self.drone_ids) or tuple(f"d{i}" for i in range(len(self.starts)))
        if len(drone_ids) != len(self.starts):
            raise ValueError("drone_ids e starts com tamanhos diferentes")
        object.__setattr__(self, "drone_ids", drone_ids)


@dataclass(frozen=True)
class RoutePlan:
    drone_ids: tuple[str, ...]
    routes: tuple[tuple[str, ...], ...]
    lengths: tuple[float, ...]
    total_length: float
    feasible: bool
    violations: tuple[str, ...] = ()

    def route_of(self, drone_id: str) -> tuple[str, ...]:
        return self.routes[self.drone_ids.index(drone_id)]

    def as_dict(self) -> dict:
        return {
            "routes": {d: list(r) for d, r in zip(self.drone_ids, self.routes)},
            "lengths": dict(zip(self.drone_ids, self.lengths)),
            "total_length": self.total_length,
            "feasible": self.feasible,
            "violations": list(self.violations),
        }


def route_length(start: ArrayLike, ordered: Sequence[Waypoint]) -> float:
    """Soma dos trechos euclidianos a partir do início (caminho aberto)."""
    total = 0.0
    prev = as_vec3(start, "início")
    for w in ordered:
        total += float(np.linalg.norm(w.position - prev))
        prev = w.position
    return total


# ─── Ordenação de um único drone ───
# Nós: 0 = início, 1..n = waypoints. d é uma lista de listas.
def _path_length(path: Sequence[int], d: list[list[float]]) -> float:
    return sum(d[a][b] for a, b in zip(path, path[1:]))


def _nearest_neighbor(n: int, d: list[list[float]], ids: list[str]) -> list[int]:
    path = [0]
    left = set(range(1, n + 1))
    while left:
        here = path[-1]
        nxt = min(left, key=lambda k: (d[here][k], ids[k]))
        path.append(nxt)
        left.remove(nxt)
    return path


def _cheapest_insertion(n: int, d: list[list[float]], ids: list[str]) -> list[int]:
    path = [0]
    left = sorted(range(1, n + 1), key=lambda k: ids[k])
    while left:
        best = None
        for c in left:
            for pos in range(1, len(path) + 1):
                a = path[pos - 1]
                if pos == len(path):
                    cost = d[a][c]
                else:
                    b = path[pos]
                    cost = d[a][c] + d[c][b] - d[a][b]
                key = (cost, ids[c], pos)
                if best is None or key < best[0]:
                    best = (key, c, pos)
        _, c, pos = best
        path.insert(pos, c)
        left.remove(c)
    return path


def _two_opt(path: list[int], d: list[list[float]]) -> list[int]:
    """
    2-opt para caminho aberto com início fixo, até o ótimo local.

    Inverter path[i..j] troca os trechos (i-1, i) e (j, j+1) por
    (i-1, j) e (i, j+1); se j é o último nó só há o primeiro trecho.
    """
    n = len(path) - 1
    improved = True
    while improved:
        improved = False
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                a, b, c = path[i - 1], path[i], path[j]
                delta = d[a][c] - d[a][b]
                if j < n:
                    e = path[j + 1]
                    delta += d[b][e] - d[c][e]
                if delta < -IMPROVEMENT_EPS:
                    path[i:j + 1] = path[i:j + 1][::-1]
                    improved = True
    return path


def _or_opt_once(path: list[int], d: list[list[float]]) -> bool:
    """Move um bloco de 1-3 nós (talvez invertido) se encurtar o caminho."""
    n = len(path) - 1
    for size in (1, 2, 3):
        for i in range(1, n - size + 2):
            seg = path[i:i + size]
            prev = path[i - 1]
            nxt = path[i + size] if i + size <= n else None
            gain = d[prev][seg[0]]
            if nxt is not None:
                gain += d[seg[-1]][nxt] - d[prev][nxt]
            rest = path[:i] + path[i + size:]
            for k in range(len(rest)):
                a = rest[k]
                b = rest[k + 1] if k + 1 < len(rest) else None
                for block in (seg, seg[::-1]):
                    added = d[a][block[0]]
                    if b is not None:
                        added += d[block[-1]][b] - d[a][b]
                    if added - gain < -IMPROVEMENT_EPS:
                        path[:] = rest[:k + 1] + block + rest[k + 1:]
                        return True
    return False


def _local_search(path: list[int], d: list[list[float]]) -> list[int]:
    while True:
        path = _two_opt(path, d)
        if not _or_opt_once(path, d):
            return path


def _distance_table(start: Vec3, waypoints: Sequence[Waypoint]) -> list[list[float]]:
    pts = np.vstack([start] + [w.position for w in waypoints])
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1)).tolist()


def order_route(start: ArrayLike, waypoints: Sequence[Waypoint]) -> list[Waypoint]:
    """
    Ordem de visita de um drone (heurística determinística).

    Constrói por vizinho mais próximo e por inserção mais barata,
    refina ambas e fica com a mais curta (empate: sequência de ids).
    """
    if len(waypoints) <= 1:
        return list(waypoints)
    start = as_vec3(start, "início")
    n = len(waypoints)
    d = _distance_table(start, waypoints)
    ids = [""] + [w.id for w in waypoints]

    best = None
    for build in (_nearest_neighbor, _cheapest_insertion):
        path = _local_search(build(n, d, ids), d)
        key = (_path_length(path, d), [ids[k] for k in path[1:]])
        if best is None or key[0] < best[0][0] - 1e-12 or (abs(key[0] - best[0][0]) <= 1e-12 and key[1] < best[0][1]):
            best = (key, path)
    return [waypoints[k - 1] for k in best[1][1:]]


# ─── Atribuição por varredura ───
def _angle(p: Vec3, center: Vec3) -> float:
    return math.atan2(p[1] - center[1], p[0] - center[0])


def _sweep_chunks(m: Mission) -> tuple[list[int], list[list[Waypoint]]]:
    """Drones ordenados por ângulo e waypoints fatiados na mesma varredura."""
    center = np.mean(np.vstack(m.starts), axis=0)
    drones = sorted(range(len(m.starts)), key=lambda i: (_angle(m.starts[i], center), i))
    ref = _angle(m.starts[drones[0]], center)
    two_pi = 2.0 * math.pi
    ordered = sorted(m.waypoints, key=lambda w: ((_angle(w.position, center) - ref) % two_pi, w.id))

    n_d, n_w = len(drones), len(ordered)
    base, extra = divmod(n_w, n_d)
    chunks, pos = [], 0
    for k in range(n_d):
        size = base + (1 if k < extra else 0)
        chunks.append(ordered[pos:pos + size])
        pos += size
    return drones, chunks


def _evaluate(m: Mission, routes: list[list[Waypoint]]) -> RoutePlan:
    lengths, violations = [], []
    for drone_id, start, route in zip(m.drone_ids, m.starts, routes):
        length = route_length(start, route)
        lengths.append(length)
        if length > m.max_route_length:
            violations.append(
                f"{drone_id}: comprimento {length:.3f} m excede o orçamento de {m.max_route_length:.3f} m"
            )
        prev_id, prev = "início", start
        for w in route:
            for k, box in enumerate(m.obstacles):
                if segment_hits_box(box, prev, w.position):
                    violations.append(f"{drone_id}: trecho {prev_id}->{w.id} corta o obstáculo {k}")
            prev_id, prev = w.id, w.position
    plan = RoutePlan(
        drone_ids=m.drone_ids,
        routes=tuple(tuple(w.id for w in r) for r in routes),
        lengths=tuple(lengths),
        total_length=float(sum(lengths)),
        feasible=not violations,
        violations=tuple(violations),
    )
    if violations:
        logger.info("plano inviável: %s", "; ".join(violations))
    return plan


def optimize(m: Mission) -> RoutePlan:
    """
    Plano heurístico: varredura + vizinho mais próximo/inserção + 2-opt.

    Determinístico para a mesma missão (inclusive a ordem das listas).

    Raises:
        ConfigurationError: missão sem drones
    """
    if not m.starts:
        raise ConfigurationError("missão sem drones")
    n_d = len(m.starts)
    if not m.waypoints:
        return _evaluate(m, [[] for _ in range(n_d)])

    drones, chunks = _sweep_chunks(m)
    best = None
    for shift in range(n_d):
        routes: list[list[Waypoint]] = [[] for _ in range(n_d)]
        for k, chunk in enumerate(chunks):
            drone = drones[(k + shift) % n_d]
            routes[drone] = order_route(m.starts[drone], chunk)
        total = sum(route_length(s, r) for s, r in zip(m.starts, routes))
        if best is None or total < best[0] - 1e-12:
            best = (total, routes)
    return _evaluate(m, best[1])


# ─── Oráculo exaustivo ───
def _best_order(
    start: int,
    nodes: list[int],
    d: list[list[float]],
    blocked: list[list[bool]] | None,
    budget: float,
) -> tuple[float, list[int]] | None:
    """Melhor permutação de nodes partindo de start (busca em profundidade com poda)."""
    best: list = [math.inf, None]

    def dfs(here: int, left: list[int], acc: float, seq: list[int]) -> None:
        if acc >= best[0] or acc > budget:
            return
        if not left:
            best[0], best[1] = acc, list(seq)
            return
        for idx, k in enumerate(left):
            if blocked is not None and blocked[here][k]:
                continue
            seq.append(k)
            dfs(k, left[:idx] + left[idx + 1:], acc + d[here][k], seq)
            seq.pop()

    dfs(start, list(nodes), 0.0, [])
    if best[1] is None:
        return None
    return best[0], best[1]


def brute_force_optimize(m: Mission) -> RoutePlan:
    """
    Ótimo global por busca exaustiva (atribuições × permutações).

    Entre os planos viáveis devolve o de menor comprimento total;
    se nenhum for viável, devolve o mais curto marcado como inviável.

    Raises:
        InstanceTooLargeError: mais de 9 waypoints (1 drone) ou 6 (2+ drones)
    """
    if not m.starts:
        raise ConfigurationError("missão sem drones")
    n_d, n_w = len(m.starts), len(m.waypoints)
    limit = MAX_BRUTE_FORCE_SINGLE if n_d == 1 else MAX_BRUTE_FORCE_MULTI
    if n_w > limit:
        raise InstanceTooLargeError(f"{n_w} waypoints para {n_d} drone(s); limite {limit}")
    if n_w == 0:
        return _evaluate(m, [[] for _ in range(n_d)])

    # nós: 0..n_d-1 = inícios, n_d.. = waypoints
    pts = np.vstack(list(m.starts) + [w.position for w in m.waypoints])
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.sqrt(np.sum(diff * diff, axis=-1)).tolist()
    size = len(pts)
    blocked = [[False] * size for _ in range(size)]
    for a in range(size):
        for b in range(size):
            if a != b and any(segment_hits_box(box, pts[a], pts[b]) for box in m.obstacles):
                blocked[a][b] = True

    memo: dict = {}

    def solve(drone: int, members: tuple[int, ...], constrained: bool):
        key = (drone, members, constrained)
        if key not in memo:
            if not members:
                memo[key] = (0.0, [])
            elif constrained:
                memo[key] = _best_order(drone, list(members), d, blocked, m.max_route_length)
            else:
                memo[key] = _best_order(drone, list(members), d, None, math.inf)
        return memo[key]

    best = None
    for constrained in (True, False):
        for assignment in product(range(n_d), repeat=n_w):
            total, orders = 0.0, []
            for drone in range(n_d):
                members = tuple(n_d + i for i in range(n_w) if assignment[i] == drone)
                result = solve(drone, members, constrained)
                if result is None:
                    break
                total += result[0]
                orders.append(result[1])
            else:
                if best is None or total < best[0]:
                    best = (total, orders)
        if best is not None:
            break

    routes = [[m.waypoints[k - n_d] for k in order] for order in best[1]]
    return _evaluate(m, routes)

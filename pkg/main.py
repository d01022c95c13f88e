import argparse
import json
import logging
import sys
from pathlib import Path

from app.entities.drone import Swarm
from app.io.export import export_csv, export_geojson
from app.io.metrics import compute_rmse
from app.io.scenario_file import assign_routes, load_scenario
from app.scenes.swarm import simulate
from engine.control.controller import Setpoint
from engine.errors import EnxameError, InstanceTooLargeError, ScenarioError
from engine.routing.planner import brute_force_optimize, optimize

logger = logging.getLogger("enxame")

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_RUNTIME_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    """ArgumentParser que sai com o código de entrada inválida."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID_INPUT, f"{self.prog}: erro: {message}\n")


def _reference_routes(sw: Swarm) -> dict[str, list[Setpoint]]:
    """Polilinha de referência de cada drone: início seguido da rota."""
    return {
        d.id: [Setpoint(d.state.position.copy(), d.hold_yaw, "início")] + list(d.route)
        for d in sw.drones
    }


# ─── Subcomandos ───
def cmd_validate(args) -> int:
    sw, sc, mission = load_scenario(args.scenario)
    print(f"{args.scenario}: válido ({len(sw.drones)} drone(s), {len(mission.waypoints)} waypoint(s), "
          f"tick {sc.reference_time_step:g} s)")
    return EXIT_OK


def cmd_simulate(args) -> int:
    sw, sc, mission = load_scenario(args.scenario)
    assign_routes(sw, mission)
    reference = _reference_routes(sw)
    tr = simulate(sw, sc, workers=args.workers)

    if args.format == "geojson":
        export_geojson(tr, sc.inertial_frame, args.out)
    else:
        export_csv(tr, args.out)
    print(f"trajetória gravada em {args.out} ({len(tr.events)} evento(s))")

    if args.metrics:
        report = compute_rmse(tr, reference)
        Path(args.metrics).write_text(json.dumps(report.as_dict(), indent=2), encoding="utf-8")
        print(f"métricas gravadas em {args.metrics}")
    return EXIT_OK


def cmd_plan_route(args) -> int:
    _, _, mission = load_scenario(args.scenario)
    plan = optimize(mission)
    document = {"heuristic": plan.as_dict()}
    print(f"heurística: {plan.total_length:.3f} m" + ("" if plan.feasible else " (inviável)"))

    if args.oracle:
        oracle = brute_force_optimize(mission)
        document["oracle"] = oracle.as_dict()
        print(f"oráculo:    {oracle.total_length:.3f} m" + ("" if oracle.feasible else " (inviável)"))

    Path(args.out).write_text(json.dumps(document, indent=2), encoding="utf-8")
    print(f"plano gravado em {args.out}")
    return EXIT_OK


def cmd_render(args) -> int:
    # pygame só é carregado por este subcomando
    from app.entities.minimap import render_png

    sw, sc, mission = load_scenario(args.scenario)
    assign_routes(sw, mission)
    planned = {drone_id: [sp.target_position for sp in route]
               for drone_id, route in _reference_routes(sw).items()}
    capture = min(d.gains.capture_radius for d in sw.drones)
    tr = simulate(sw, sc, workers=args.workers)
    render_png(tr, planned, args.out, args.size, sc.conditions.obstacles, capture)
    print(f"prévia gravada em {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="enxame", description="Simulador determinístico de enxames de drones.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log em nível DEBUG")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="simula o cenário e exporta a trajetória")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("geojson", "csv"), default="geojson")
    p.add_argument("--metrics", help="grava métricas (RMSE, comprimento, capturas) em JSON")
    p.add_argument("--workers", type=int, default=1, help="threads para o passo por drone")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plan-route", help="planeja as rotas da missão")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--oracle", action="store_true", help="compara com a busca exaustiva")
    p.set_defaults(func=cmd_plan_route)

    p = sub.add_parser("validate", help="valida o arquivo de cenário")
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("render", help="simula e grava uma prévia PNG vista de cima")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--size", type=int, default=512)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    """
    Ponto de entrada do simulador.

    Fluxo:
        1. Lê os argumentos (erro de uso → código 1).
        2. Configura o logging (--verbose → DEBUG).
        3. Executa o subcomando.
        4. Converte exceções em códigos de saída:
            - ScenarioError / guarda do oráculo: 1 (entrada inválida)
            - demais EnxameError e OSError: 2 (falha em execução)
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "workers", 1) < 1:
        print("erro: --workers deve ser >= 1", file=sys.stderr)
        return EXIT_INVALID_INPUT

    try:
        return args.func(args)
    except ScenarioError as exc:
        print(json.dumps(exc.as_dict(), ensure_ascii=False), file=sys.stderr)
        return EXIT_INVALID_INPUT
    except InstanceTooLargeError as exc:
        print(f"erro: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (EnxameError, OSError) as exc:
        logger.debug("falha em execução", exc_info=True)
        print(f"erro: {exc}", file=sys.stderr)
        return EXIT_RUNTIME_FAILURE


if __name__ == "__main__":
    sys.exit(main())

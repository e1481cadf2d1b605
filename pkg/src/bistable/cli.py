"""Command-line surface: build, classify, solve, covers, cup products,
curvature, flux reachability, the game service, and figure reports.

Verdicts (impossible / conflict / unreachable) are results, not failures:
they exit 0 with structured output. Usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys

from . import catalog, flux, jsonio
from .cells import triangulate
from .cohomology import cohomology
from .covers import (
    build_cover,
    circuit_monodromy,
    config_walk_monodromy,
    cover_triviality,
    dual_config_torsor,
    exchange_loop,
)
from .gf2 import BitVector
from .systems import (
    CouplingSystem,
    Infeasibility,
    classify,
    edge_walk_from_vertices,
    extend_coupling,
    holonomy,
    solve_sections,
    total_curvature,
)

DEFAULT_PORT = int(os.environ.get("BISTABLE_PORT", "8321"))


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]


def _bit_list(text: str) -> list[int]:
    return [int(tok) & 1 for tok in text.replace(" ", "").split(",") if tok != ""]


def _pins(text: str) -> dict[int, int]:
    out = {}
    for tok in text.split(","):
        v, b = tok.split(":")
        out[int(v)] = int(b) & 1
    return out


def _load(path: str) -> CouplingSystem:
    return jsonio.load_system(path)


def export_dot(sys: CouplingSystem) -> str:
    lines = ["graph system {"]
    for v in range(sys.complex.n_vertices):
        pin = f' xlabel="pin={sys.pinned[v]}"' if v in sys.pinned else ""
        lines.append(f'  v{v} [label="{v}"{pin}];')
    g = set(sys.constraint_edges)
    c = sys.effective_coupling()
    for e, (u, v) in enumerate(sys.complex.edges):
        if e in g:
            style = "dashed" if c[e] else "solid"
            lines.append(f'  v{u} -- v{v} [style={style}];')
        else:
            lines.append(f'  v{u} -- v{v} [style=dotted, color=gray];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot_cover(cover) -> str:
    v_count = cover.system.complex.n_vertices
    lines = ["graph cover {"]
    for s in (0, 1):
        for v in range(v_count):
            lines.append(f'  s{s}_{v} [label="{s}:{v}"];')
    c = cover.system.effective_coupling()
    for i, (a, b) in enumerate(cover.edges):
        e = cover.base_edge[i]
        style = "dashed" if c[e] else "solid"
        lines.append(
            f"  s{a // v_count}_{a % v_count} -- s{b // v_count}_{b % v_count} [style={style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(jsonio.dumps(payload), end="")
    else:
        print(text)


def cmd_build(args) -> int:
    params = {}
    for name in ("n", "m", "w", "h", "k", "radius"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    if args.pin is not None:
        a, b = _int_list(args.pin)
        params["pin"] = (a, b)
    if args.pins is not None:
        params["pins"] = _pins(args.pins)
    if args.twist_edges is not None:
        params["twist_edges"] = _int_list(args.twist_edges)
    system = catalog.build_system(catalog.SystemSpec(args.kind, params))
    data = jsonio.system_to_dict(system)
    if args.output:
        jsonio.save(data, args.output)
        print(f"wrote {args.output}")
    else:
        print(jsonio.dumps(data), end="")
    return 0


def cmd_classify(args) -> int:
    system = _load(args.system)
    region = _int_list(args.region) if args.region else None
    verdict = classify(system, region)
    payload = jsonio.classification_to_dict(verdict)
    text = f"{verdict.level}; {verdict.detail}"
    if verdict.relative is not None and verdict.level == "Conflict":
        state = "nonzero" if verdict.relative.coordinates.bits else "zero"
        text = f"{verdict.level}; relative H1 class {state}; {verdict.detail}"
    _emit(args, payload, text)
    return 0


def cmd_holonomy(args) -> int:
    system = _load(args.system)
    walk = edge_walk_from_vertices(system, _int_list(args.cycle))
    value = holonomy(system, walk)
    _emit(args, {"holonomy": value, "edge_walk": walk}, f"holonomy = {value}")
    return 0


def cmd_solve(args) -> int:
    system = _load(args.system)
    result = solve_sections(system)
    if isinstance(result, Infeasibility):
        if result.kind == "odd_cycle":
            payload = {"solvable": False, "certificate": {"kind": "odd_cycle", "cycle": list(result.cycle)}}
            text = f"infeasible; odd cycle {list(result.cycle)}"
        else:
            payload = {
                "solvable": False,
                "certificate": {
                    "kind": "pin_clash",
                    "path": list(result.path),
                    "pinned_pair": list(result.pinned_pair),
                },
            }
            text = f"infeasible; pinned vertices {result.pinned_pair} clash along edges {list(result.path)}"
    else:
        payload = {
            "solvable": True,
            "sections": result.count,
            "base": result.base.to_list(),
            "flips": [f.support() for f in result.flips],
        }
        text = f"solvable; {result.count} section(s); base state {result.base.to_list()}"
    _emit(args, payload, text)
    return 0


def cmd_cover(args) -> int:
    system = _load(args.system)
    cover = build_cover(system)
    info = cover_triviality(cover)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(export_dot_cover(cover))
    payload = {
        "trivial": info.trivial,
        "lifted_components": info.lifted_components,
        "base_components": info.base_components,
    }
    if info.sections is not None:
        payload["sections"] = [s.to_list() for s in info.sections.sections()]
    text = (
        f"cover {'trivial' if info.trivial else 'nontrivial'}; "
        f"{info.lifted_components} lifted component(s) over {info.base_components}"
    )
    _emit(args, payload, text)
    return 0


def cmd_moma(args) -> int:
    system = _load(args.system)
    if args.dual:
        n = system.complex.n_vertices
        ring_coupling = [system.effective_coupling()[e] for e in range(n)]
        torsor = dual_config_torsor(n, args.window, ring_coupling)
        loop = exchange_loop(torsor)
        flip = config_walk_monodromy(torsor, loop)
        payload = {
            "config_nodes": len(torsor.nodes),
            "config_edges": torsor.graph.n_edges,
            "class_coordinates": torsor.class_coordinates.to_list(),
            "exchange_monodromy": flip,
        }
        text = f"dual apertures: exchange monodromy = {flip} over {len(torsor.nodes)} configurations"
        _emit(args, payload, text)
        return 0
    flip, trace = circuit_monodromy(system, args.window, args.laps)
    if args.trace:
        jsonio.save({"steps": trace, "flip": flip}, args.trace)
    payload = {"flip": flip, "laps": args.laps, "window": args.window, "steps": len(trace)}
    text = f"circuit flip = {flip} after {args.laps} lap(s) with window {args.window}"
    _emit(args, payload, text)
    return 0


def cmd_cup(args) -> int:
    system = _load(args.system)
    refined = triangulate(system.complex)
    h1 = cohomology(refined, 1)
    if not (0 <= args.alpha < h1.dimension and 0 <= args.beta < h1.dimension):
        raise SystemExit(f"class index out of range; H1 dimension is {h1.dimension}")
    from .cohomology import cup_product

    rep, pairing = cup_product(refined, h1.representatives[args.alpha], h1.representatives[args.beta])
    payload = {
        "pairing": pairing,
        "h1_dimension": h1.dimension,
        "representative_support": rep.support(),
    }
    _emit(args, payload, f"pairing = {pairing}")
    return 0


def cmd_curvature(args) -> int:
    system = _load(args.system)
    if args.extension == "zero":
        ext = extend_coupling(system, "zero")
    elif args.extension.startswith("seed:"):
        ext = extend_coupling(system, int(args.extension[5:]))
    else:
        raise SystemExit("--extension must be 'zero' or 'seed:N'")
    region = _int_list(args.region) if args.region else list(range(system.complex.n_faces))
    total = total_curvature(ext, region)
    frustrated = [f for f in region if ext.curvature[f]]
    payload = {"total": total, "frustrated_faces": frustrated, "region": region}
    _emit(args, payload, f"total curvature = {total}; frustrated faces {frustrated}")
    return 0


def cmd_flux(args) -> int:
    system = _load(args.system)
    x = system.complex
    if args.flux_cmd == "sector":
        mu = BitVector.from_bits(_bit_list(args.mu))
        coords = flux.sector(x, mu)
        _emit(args, {"sector": coords.to_list()}, f"sector = {coords.to_list()}")
        return 0
    mu_from = BitVector.from_bits(_bit_list(args.source))
    mu_to = BitVector.from_bits(_bit_list(args.target))
    mode = "frozen" if args.frozen else "free"
    result = flux.reachable(x, mu_from, mu_to, mode)
    payload = {
        "reachable": result.reachable,
        "invariant": result.invariant.to_list(),
    }
    if result.reachable:
        payload["moves"] = list(result.moves)
        text = f"reachable; toggle edges {list(result.moves)}"
    else:
        text = f"unreachable; separating invariant {result.invariant.to_list()}"
    _emit(args, payload, text)
    return 0


def cmd_game(args) -> int:
    if args.game_cmd == "serve":
        from .service import serve

        print(f"serving flux game on port {args.port}")
        serve(port=args.port, ui_dir=args.ui, default_board=args.board)
        return 0
    boards = {}
    from .service import board_complexes

    boards = board_complexes()
    if args.board not in boards:
        raise SystemExit(f"unknown board {args.board!r}; known: {', '.join(sorted(boards))}")
    x = boards[args.board]
    mu_from = BitVector.from_bits(_bit_list(args.source)) if args.source else BitVector.zeros(x.n_faces)
    mu_to = BitVector.from_bits(_bit_list(args.target)) if args.target else BitVector.zeros(x.n_faces)
    mode = "frozen" if args.frozen else "free"
    result = flux.reachable(x, mu_from, mu_to, mode)
    if result.reachable:
        print(f"solvable; moves: {list(result.moves)}")
    else:
        print(f"unsolvable; invariant {result.invariant.to_list()}")
    return 0


def cmd_report(args) -> int:
    from .report import write_report

    system = _load(args.system)
    paths = write_report(system, args.output)
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_dot(args) -> int:
    system = _load(args.system)
    text = export_dot(system)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bistable",
        description="Z2 cohomology engine for bistable constraint systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a catalog system and emit its JSON")
    p.add_argument("kind", choices=catalog.kinds())
    for flag in ("n", "m", "w", "h", "k", "radius"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--pin", help="endpoint pin bits, e.g. 0,1")
    p.add_argument("--pins", help="vertex:bit list, e.g. 0:0,8:1")
    p.add_argument("--twist-edges", help="edge index list, e.g. 2,5")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classify", help="place a system in the obstruction hierarchy")
    p.add_argument("system")
    p.add_argument("--region", help="face list for curvature reporting, e.g. 0,1,2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("holonomy", help="coupling parity around a vertex cycle")
    p.add_argument("system")
    p.add_argument("--cycle", required=True, help="vertex list, e.g. 0,1,2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_holonomy)

    p = sub.add_parser("solve", help="enumerate global sections or certify none")
    p.add_argument("system")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cover", help="build the double cover and test triviality")
    p.add_argument("system")
    p.add_argument("--dot", help="write the cover as DOT")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("moma", help="sliding-aperture monodromy on ring systems")
    p.add_argument("system")
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--laps", type=int, default=1)
    p.add_argument("--dual", action="store_true", help="dual-aperture configuration torsor")
    p.add_argument("--trace", help="write the transport trace JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_moma)

    p = sub.add_parser("cup", help="cup product pairing of two degree-1 classes")
    p.add_argument("system")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cup)

    p = sub.add_parser("curvature", help="total curvature of a face region")
    p.add_argument("system")
    p.add_argument("--region", help="face list; defaults to all faces")
    p.add_argument("--extension", default="zero", help="zero | seed:N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("flux", help="degree-shifted sector and reachability")
    fsub = p.add_subparsers(dest="flux_cmd", required=True)
    ps = fsub.add_parser("sector")
    ps.add_argument("system")
    ps.add_argument("--mu", required=True, help="face bits, e.g. 1,0,0,1")
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_flux)
    pr = fsub.add_parser("reach")
    pr.add_argument("system")
    pr.add_argument("--from", dest="source", required=True, help="face bits")
    pr.add_argument("--to", dest="target", required=True, help="face bits")
    pr.add_argument("--frozen", action="store_true")
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_flux)

    p = sub.add_parser("game", help="serve or solve the edge-toggle game")
    gsub = p.add_subparsers(dest="game_cmd", required=True)
    pg = gsub.add_parser("serve")
    pg.add_argument("--port", type=int, default=DEFAULT_PORT)
    pg.add_argument("--board", default="icosahedron", help="default board for new sessions")
    pg.add_argument("--ui", help="directory of built UI assets to serve at /")
    pg.set_defaults(func=cmd_game)
    pg = gsub.add_parser("solve")
    pg.add_argument("--board", default="tetrahedron")
    pg.add_argument("--from", dest="source", help="face bits")
    pg.add_argument("--to", dest="target", help="face bits")
    pg.add_argument("--frozen", action="store_true")
    pg.set_defaults(func=cmd_game)

    p = sub.add_parser("report", help="figures plus delimited summary for a system")
    p.add_argument("system")
    p.add_argument("-o", "--output", default="report")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("dot", help="export the constraint graph as DOT")
    p.add_argument("system")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        parser.exit(2, f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    _sys.exit(main())

"""Command line front end.

Exit codes: 0 on success, 1 on bad input, 2 when a resource cap aborts.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import pipeline
from .bounding import bounded_safety_oracle, lasso_bounding_winner
from .energy_parity import Credit, capped_energy_parity_oracle, lasso_energy_parity_winner
from .graph import (
    GameError,
    MultiWeightedGameGraph,
    ResourceCapError,
    export_dot,
    load_game,
    parse_lasso,
    path_weight,
    random_game,
    serialize_game,
)
from .lexenergy import lasso_lex_energy_winner
from .mpg import ENGINES
from .phs import build_phs_arena, lasso_phs_winner, split_product_id

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 1, 2
LASSO_TYPES = ("mpg", "lexen", "phs", "bounding", "enparity")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _player(w) -> str:
    return {1: "Player 1", 2: "Player 2"}.get(w, str(w))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="phsgames", description="Solve multi-dimensional energy parity games and their relatives.")
    p.add_argument("--json", action="store_true", help="emit one machine-readable report")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("solve", help="solve a game file")
    s.add_argument("--type", required=True, choices=pipeline.SOLVE_TYPES)
    s.add_argument("--input", required=True)
    s.add_argument("--credit", help="comma-separated initial credit (enparity-given)")
    s.add_argument("--cap", type=int, default=16, help="energy cap for enparity-given")
    s.add_argument("--hs-norm-bound", type=int, help="half-space norm bound (default: complete for phs/bounding, 1 for energy)")
    s.add_argument("--orthant-filter", action="store_true", help="keep only half spaces containing every -e_i")
    s.add_argument("--engine", choices=ENGINES, default="strategy-improvement")
    s.add_argument("--values", action="store_true", help="also compute exact mean-payoff values (mpg)")

    r = sub.add_parser("reduce", help="run part of the reduction chain and emit the game file")
    r.add_argument("--from", dest="src", required=True)
    r.add_argument("--to", dest="dst", required=True)
    r.add_argument("--input", required=True)
    r.add_argument("--output", help="write the game here instead of stdout")
    r.add_argument("--hs-norm-bound", type=int)

    gen = sub.add_parser("gen", help="generate a random game")
    gen.add_argument("--vertices", type=int, required=True)
    gen.add_argument("--dim", type=int, required=True)
    gen.add_argument("--max-weight", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--priorities", action="store_true")
    gen.add_argument("--max-priority", type=int, default=4)
    gen.add_argument("--extended", action="store_true")
    gen.add_argument("--output")

    o = sub.add_parser("oracle", help="desk-scale brute-force oracles")
    o.add_argument("--type", required=True, choices=("safety", "capped-energy"))
    o.add_argument("--input", required=True)
    o.add_argument("--bound", type=int, default=8, help="box half-width for the safety oracle")
    o.add_argument("--cap", type=int, default=8, help="energy cap for the capped oracle")
    o.add_argument("--credit", help="comma-separated initial credit (capped-energy)")

    e = sub.add_parser("eval-lasso", help="exact winner of an ultimately periodic play")
    e.add_argument("--type", required=True, choices=LASSO_TYPES)
    e.add_argument("--input", required=True)
    e.add_argument("--lasso", required=True)
    e.add_argument("--credit", help="comma-separated initial credit (enparity)")

    d = sub.add_parser("export-dot", help="write a DOT description of the game")
    d.add_argument("--input", required=True)
    d.add_argument("--solve", choices=pipeline.SOLVE_TYPES, help="annotate winners and Player-2 strategy")
    d.add_argument("--hs-norm-bound", type=int)
    d.add_argument("--output")
    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return p


def _load(path: str) -> MultiWeightedGameGraph:
    try:
        return load_game(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _credit(text: str | None, g: MultiWeightedGameGraph) -> Credit | None:
    if text is None:
        return None
    c = Credit.parse(text)
    if len(c) != g.dim:
        raise InputError(f"credit has {len(c)} components, game has dimension {g.dim}")
    return c


def _emit(text: str, output: str | None) -> str | None:
    """Write ``text`` to ``output`` if given, else hand it back for stdout."""
    if output:
        Path(output).write_text(text)
        return None
    return text


def _cmd_solve(args) -> dict:
    g = _load(args.input)
    cfg = pipeline.SolveConfig(
        type=args.type,
        engine=args.engine,
        hs_norm_bound=args.hs_norm_bound,
        orthant_filter=args.orthant_filter,
        credit=_credit(args.credit, g),
        cap=args.cap,
        values=args.values,
    )
    return pipeline.solve(g, cfg).to_dict()


def _cmd_reduce(args) -> dict:
    g = _load(args.input)
    out, prov = pipeline.reduce(g, args.src, args.dst, args.hs_norm_bound)
    comments = [f"reduced {args.src} -> {args.dst} from {Path(args.input).name}"]
    text = _emit(serialize_game(out, comments), args.output)
    return {"command": "reduce", "from": args.src, "to": args.dst, "provenance": prov, "game": text}


def _cmd_gen(args) -> dict:
    g = random_game(
        args.vertices,
        args.dim,
        args.max_weight,
        args.seed,
        extended=args.extended,
        priorities=args.priorities,
        max_priority=args.max_priority,
    )
    text = _emit(serialize_game(g, [f"seed {args.seed}"]), args.output)
    return {"command": "gen", "seed": args.seed, "game": text}


def _cmd_oracle(args) -> dict:
    g = _load(args.input)
    if args.type == "safety":
        ws = bounded_safety_oracle(g, args.bound)
        return {
            "command": "oracle",
            "type": "safety",
            "bound": args.bound,
            "winners": {v.id: w for v, w in zip(g.vertices, ws)},
            "caveats": ["Player-1 wins are sound for the bounding game; Player-2 wins hold only at this bound"],
        }
    c = _credit(args.credit, g) or Credit.uniform(0, g.dim)
    ws = capped_energy_parity_oracle(g, c, args.cap)
    return {
        "command": "oracle",
        "type": "capped-energy",
        "cap": args.cap,
        "credit": list(c.values),
        "winners": {v.id: (1 if w == 1 else pipeline.UNKNOWN) for v, w in zip(g.vertices, ws)},
        "caveats": ["Player-1 wins are sound; otherwise Player 2 wins only at this cap"],
    }


def _cmd_eval_lasso(args) -> dict:
    g = _load(args.input)
    try:
        lasso = parse_lasso(Path(args.lasso).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.lasso}: {exc.strerror or exc}") from None
    t = args.type
    if t == "mpg":
        _, cyc = lasso.edges(g)
        total = path_weight(g, cyc)[0]
        winner = 1 if total >= 0 else 2
    elif t == "lexen":
        winner = lasso_lex_energy_winner(g, lasso)
    elif t == "bounding":
        winner = lasso_bounding_winner(g, lasso)
    elif t == "enparity":
        c = _credit(args.credit, g) or Credit.uniform(0, g.dim)
        winner = lasso_energy_parity_winner(g, lasso, c)
    else:
        B = max(split_product_id(x, g.dim)[1].norm for x in lasso.prefix + lasso.cycle)
        winner = lasso_phs_winner(build_phs_arena(g, B), lasso)
    return {"command": "eval-lasso", "type": t, "winner": winner}


def _cmd_export_dot(args) -> dict:
    g = _load(args.input)
    winners = strategy = None
    if args.solve:
        rep = pipeline.solve(g, pipeline.SolveConfig(type=args.solve, hs_norm_bound=args.hs_norm_bound))
        if args.solve not in ("phs", "enparity-given"):
            winners = dict(rep.winners)
            strategy = rep.strategies.get("player2")
    text = _emit(export_dot(g, winners, strategy), args.output)
    return {"command": "export-dot", "dot": text}


def _human(report: dict) -> str:
    lines = []
    if "winners" in report:
        head = f"{report.get('type', report.get('command'))}: {report.get('game', '')}".rstrip(": ")
        lines.append(head)
        for v, w in report["winners"].items():
            lines.append(f"  {v}: {_player(w)}")
    if "winner" in report:
        lines.append(f"winner: {_player(report['winner'])}")
    if report.get("values"):
        lines.append("values (per round):")
        lines += [f"  {v}: {x}" for v, x in report["values"].items()]
    for player, strat in report.get("strategies", {}).items():
        if strat:
            lines.append(f"strategy {player}:")
            lines += [f"  {u} -> {v}" for u, v in strat.items()]
    for c in report.get("caveats", []):
        lines.append(f"caveat: {c}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "solve": _cmd_solve,
    "reduce": _cmd_reduce,
    "gen": _cmd_gen,
    "oracle": _cmd_oracle,
    "eval-lasso": _cmd_eval_lasso,
    "export-dot": _cmd_export_dot,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    as_json = False
    try:
        args = parser.parse_args(argv)
        as_json = args.json
        if args.command is None:
            raise InputError("missing subcommand; try --help")
        report = COMMANDS[args.command](args)
    except ResourceCapError as exc:
        _fail(out, as_json, "resource-cap", str(exc))
        return EXIT_CAP
    except (InputError, GameError, ValueError, KeyError) as exc:
        _fail(out, as_json, "input", str(exc))
        return EXIT_INPUT
    if as_json:
        out.write(json.dumps(report, indent=2, sort_keys=False) + "\n")
    elif args.command in ("solve", "oracle", "eval-lasso"):
        out.write(_human(report))
    else:
        out.write(report.get("game") or report.get("dot") or "")
    return EXIT_OK


def _fail(out, as_json: bool, kind: str, message: str) -> None:
    if as_json:
        out.write(json.dumps({"error": kind, "message": message}) + "\n")
    else:
        sys.stderr.write(f"phsgames: {kind} error: {message}\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

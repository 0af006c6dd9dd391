"""Command-line front end.

Exit status: 0 on success (or a solved search), 2 when a search or proof
completed without finding the mate, 1 on any error.  Results go to stdout
as ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .board import FenError, descriptive, make_move, perft, san
from .entropy import DEFAULT_MODEL, EntropyModel, MoveCategory, fractional_ply, position_entropy
from .experiments import (ExperimentError, emit_csv, emit_plot_series, load_config,
                          resolve_position, run_sweep)
from .oracle import OracleBudgetExceeded, certify_mate
from .search import SchedulerKind, SearchParams, ers_search, evaluate

EXIT_OK, EXIT_ERROR, EXIT_UNSOLVED = 0, 1, 2
MAX_PERFT_DEPTH = 6


class CliError(Exception):
    pass


def _position(text: str):
    try:
        return resolve_position(text)
    except (ExperimentError, FenError) as exc:
        raise CliError(str(exc)) from None


def _pv_text(pos, moves, style: str) -> str:
    out = []
    for i, m in enumerate(moves):
        render = descriptive if style == "descriptive" else san
        text = render(pos, m)
        if style == "descriptive":
            text = f"{i // 2 + 1}. {text}" if i % 2 == 0 else f"; {text}"
        out.append(text)
        pos = make_move(pos, m)
    if style == "descriptive":
        return " ".join(out).replace(" ;", ";")
    return " ".join(out)


def _emit(pairs) -> None:
    for key, value in pairs:
        print(f"{key}: {value}")


def cmd_solve(args) -> int:
    pos = _position(args.position)
    try:
        params = SearchParams(scheduler=args.scheduler, virtual_budget=args.budget,
                              step=args.step, divisor=args.divisor,
                              hard_ply_cap=args.cap, node_limit=args.node_limit)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    res = ers_search(pos, params)
    style = "descriptive" if args.descriptive else "san"
    value = "none" if res.value is None else f"{res.value:g}"
    _emit([
        ("value", value),
        ("pv", _pv_text(pos, res.principal_variation, style)),
        ("nodes", res.stats.nodes),
        ("cutoffs", res.stats.cutoffs),
        ("max_ply", res.stats.max_ply_reached),
        ("solved", int(res.solved)),
        ("aborted", int(res.aborted)),
    ])
    return EXIT_OK if res.solved else EXIT_UNSOLVED


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    out = Path(args.out)
    if not out.parent.exists():
        raise CliError(f"output directory {out.parent} does not exist")
    rows = run_sweep(cfg)
    emit_csv(rows, out)
    pairs = [("rows", len(rows)), ("solved", sum(r.solved for r in rows)), ("csv", out)]
    if args.plots:
        paths = emit_plot_series(rows, args.plots)
        pairs += [(f"series_{k}", v) for k, v in paths.items()]
    _emit(pairs)
    return EXIT_OK


def cmd_perft(args) -> int:
    if not 0 <= args.depth <= MAX_PERFT_DEPTH:
        raise CliError(f"depth must lie in 0..{MAX_PERFT_DEPTH}")
    pos = _position(args.position)
    _emit([("depth", args.depth), ("nodes", perft(pos, args.depth))])
    return EXIT_OK


def cmd_eval(args) -> int:
    pos = _position(args.position)
    _emit([("centipawns", evaluate(pos))])
    return EXIT_OK


def cmd_entropy(args) -> int:
    pos = _position(args.position)
    model = DEFAULT_MODEL
    if args.model:
        try:
            model = EntropyModel.from_text(Path(args.model).read_text())
        except OSError as exc:
            raise CliError(f"cannot read model {args.model}: {exc}") from None
        except ValueError as exc:
            raise CliError(f"bad model file: {exc}") from None
    pairs = [("position_entropy_bits", f"{position_entropy(model, pos):.6g}")]
    pairs += [(f"fractional_ply_{c.value}", f"{fractional_ply(model, c):.6g}")
              for c in MoveCategory]
    _emit(pairs)
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.plies < 1:
        raise CliError("plies must be at least 1")
    pos = _position(args.position)
    try:
        ok = certify_mate(pos, args.plies, max_nodes=args.max_nodes)
    except OracleBudgetExceeded as exc:
        raise CliError(str(exc)) from None
    _emit([("plies", args.plies), ("mate", "true" if ok else "false")])
    return EXIT_OK if ok else EXIT_UNSOLVED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="erschess", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    pos_help = "FEN, EPD or registry id (e.g. 'combination', 'start')"

    p = sub.add_parser("solve", help="run a partial-depth search")
    p.add_argument("position", help=pos_help)
    p.add_argument("--scheduler", default="continuous",
                   choices=[k.value for k in SchedulerKind])
    p.add_argument("--divisor", type=float, default=1.0)
    p.add_argument("--budget", type=float, default=16.0)
    p.add_argument("--step", type=float, default=6.0)
    p.add_argument("--cap", type=int, default=None, help="hard ply cap")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--descriptive", action="store_true",
                   help="print the PV in descriptive notation")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="run an experiment grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--plots", default=None, help="directory for the series files")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("perft", help="count leaf nodes of the legal move tree")
    p.add_argument("position", help=pos_help)
    p.add_argument("depth", type=int)
    p.set_defaults(func=cmd_perft)

    p = sub.add_parser("eval", help="static evaluation for the side to move")
    p.add_argument("position", help=pos_help)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("entropy", help="position entropy and fractional plies")
    p.add_argument("position", help=pos_help)
    p.add_argument("--model", default=None, help="key=value entropy model file")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("certify", help="prove or refute a forced mate")
    p.add_argument("position", help=pos_help)
    p.add_argument("plies", type=int)
    p.add_argument("--max-nodes", type=int, default=None)
    p.set_defaults(func=cmd_certify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (CliError, ExperimentError, FenError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()

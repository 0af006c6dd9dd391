"""Parameter sweeps over the divisor / virtual budget plane.

A sweep runs one partial-depth search per ``(divisor, budget)`` row on a
single position and records the seven table columns: id, nodes, divisor,
maximum ply reached, budget, solved flag and step.  Results can be written
as CSV and split into gnuplot-friendly series files.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .board import FenError, Move, Position, parse_epd, parse_fen, to_epd
from .oracle import certify_first_move, certify_mate
from .search import SchedulerKind, SearchParams, ers_search

CSV_HEADER = ("id", "nodes", "divisor", "max_ply", "virtual_budget", "solved", "step")
DEFAULT_NODE_LIMIT = 10 ** 8


class ExperimentError(ValueError):
    pass


# --------------------------------------------------------------------------
# position registry


@dataclass(frozen=True)
class RegistryEntry:
    id: str
    epd: str
    mate_plies: Optional[int] = None
    first_move: Optional[str] = None
    note: str = ""

    @property
    def position(self) -> Position:
        return parse_epd(self.epd)[0]


class PositionRegistry:
    """Named test positions.  Entries with ``mate_plies`` are combinations
    and are proven by the oracle the first time they are fetched."""

    def __init__(self, entries: Iterable[RegistryEntry] = ()):
        self._entries: Dict[str, RegistryEntry] = {}
        self._certified: Dict[str, bool] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: RegistryEntry) -> None:
        if entry.id in self._entries:
            raise ExperimentError(f"duplicate registry id {entry.id!r}")
        parse_epd(entry.epd)  # fail early on malformed records
        self._entries[entry.id] = entry

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def ids(self) -> List[str]:
        return list(self._entries)

    def entry(self, key: str) -> RegistryEntry:
        try:
            return self._entries[key]
        except KeyError:
            raise ExperimentError(f"unknown position id {key!r}") from None

    def certify(self, key: str, max_nodes: Optional[int] = None) -> bool:
        e = self.entry(key)
        if e.mate_plies is None:
            return True
        if key not in self._certified:
            pos = e.position
            ok = certify_mate(pos, e.mate_plies, max_nodes=max_nodes)
            if ok and e.first_move is not None:
                ok = certify_first_move(pos, Move.from_uci(e.first_move), e.mate_plies,
                                        max_nodes=max_nodes)
            self._certified[key] = ok
        return self._certified[key]

    def get(self, key: str) -> Position:
        """Position for ``key``; combinations must pass certification."""
        if not self.certify(key):
            raise ExperimentError(f"registry position {key!r} failed mate certification")
        return self.entry(key).position


# Queen sacrifice on b6 followed by a bishop check and a rook mill along the
# seventh rank; the defender's queen interposes on e8 before the final mate.
# There is no mate in six or fewer (full-width proof, several minutes).
COMBINATION_EPD = ('1n1k1r2/pp2R3/5P2/3P4/q1pQ4/8/6PP/6BK w - - '
                   'bm Qb6+; dm 7; id "combination";')

DEFAULT_REGISTRY = PositionRegistry([
    RegistryEntry("combination", COMBINATION_EPD, mate_plies=13, first_move="d4b6",
                  note="queen sacrifice, mate in 7"),
    RegistryEntry("start", "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -"),
    RegistryEntry("kiwipete",
                  "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq -"),
    RegistryEntry("endgame", "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - -"),
    RegistryEntry("promotions",
                  "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq -"),
])


def resolve_position(position_id: str, registry: Optional[PositionRegistry] = None) -> Position:
    """Registry key, or an inline FEN / EPD string."""
    registry = registry or DEFAULT_REGISTRY
    if position_id in registry:
        return registry.get(position_id)
    text = position_id.strip()
    try:
        if len(text.split()) == 6 and ";" not in text:
            return parse_fen(text)
        return parse_epd(text)[0]
    except FenError as exc:
        raise ExperimentError(f"unknown position id {position_id!r}: {exc}") from None


# --------------------------------------------------------------------------
# grids


# (divisor, budget) pairs of the original thirty-row experiment table
REFERENCE_GRID: Tuple[Tuple[float, float], ...] = (
    (1, 16), (1.25, 16), (1.25, 22), (1.25, 24), (1.25, 26), (1.25, 28), (1.25, 30),
    (1.5, 32), (1.5, 34), (1.5, 36), (1.5, 38), (1.75, 40), (1.75, 42), (1.75, 44),
    (2, 46), (2, 48), (2.25, 50), (2.25, 52), (2.5, 54), (2.75, 56), (3, 58),
    (3.25, 60), (3.5, 62), (3.75, 62), (3.75, 64), (4, 64), (4.25, 66), (4.5, 68),
    (4.75, 69), (5, 70),
)

# published results for the grid above: (nodes, max ply, solved)
REFERENCE_RESULTS: Tuple[Tuple[int, int, int], ...] = (
    (20827, 17, 1), (1080, 8, 0), (88532, 12, 0), (139545, 12, 0), (155130, 14, 0),
    (291714, 14, 0), (82208, 16, 1), (311166, 12, 0), (494560, 13, 0), (1009407, 14, 0),
    (208423, 15, 1), (1821489, 13, 0), (2337740, 14, 0), (381146, 14, 1),
    (4547933, 14, 0), (603499, 14, 1), (8549650, 14, 0), (816524, 14, 1),
    (822539, 14, 1), (880194, 14, 1), (897504, 14, 1), (1026531, 14, 1),
    (2280040, 14, 1), (96973328, 14, 0), (3210105, 14, 1), (2661590, 14, 1),
    (4084892, 14, 1), (6624146, 14, 1), (4572359, 14, 1), (7711638, 14, 1),
)

# Same shape as REFERENCE_GRID (divisor 1 to 5 in quarter steps, budgets
# escalating with the divisor) scaled to what the registered combination
# needs, so a full sweep runs in minutes.  Budgets are the measured
# smallest solving budgets, preceded by unsolved rows where the table had them.
DESK_GRID: Tuple[Tuple[float, float], ...] = (
    (1, 16), (1.25, 16), (1.25, 17), (1.25, 18), (1.25, 19), (1.25, 20),
    (1.5, 20), (1.5, 21), (1.5, 22), (1.5, 23), (1.75, 23), (1.75, 24), (1.75, 25),
    (2, 25), (2, 26), (2.25, 26), (2.25, 27), (2.5, 27), (2.5, 28), (2.75, 29),
    (3, 30), (3.25, 30), (3.5, 31), (3.75, 31), (4, 31), (4.25, 31), (4.25, 32),
    (4.5, 32), (4.75, 32), (5, 32),
)

# per-row node cap for the desk sweep; every desk row finishes well inside it
DESK_NODE_LIMIT = 4_000_000


def divisor_levels(lo: float = 1.0, hi: float = 5.0, step: float = 0.25) -> List[float]:
    n = int(round((hi - lo) / step))
    return [round(lo + i * step, 10) for i in range(n + 1)]


# --------------------------------------------------------------------------
# running


@dataclass(frozen=True)
class ExperimentRow:
    id: int
    nodes: int
    divisor: float
    max_ply: int
    virtual_budget: float
    solved: int
    step: float

    def as_tuple(self) -> tuple:
        return (self.id, self.nodes, self.divisor, self.max_ply,
                self.virtual_budget, self.solved, self.step)


@dataclass(frozen=True)
class ExperimentConfig:
    position_id: str
    rows: Tuple[Tuple[float, float], ...]
    step: float = 6.0
    scheduler: SchedulerKind = SchedulerKind.CONTINUOUS
    node_limit: int = DEFAULT_NODE_LIMIT
    mate_threshold: Optional[float] = None  # None: the search's own mate test
    workers: int = 1

    def __post_init__(self):
        rows = tuple((float(d), float(b)) for d, b in self.rows)
        if not rows:
            raise ExperimentError("config needs at least one row")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "scheduler", SchedulerKind(self.scheduler))
        if self.node_limit < 1:
            raise ExperimentError("node_limit must be positive")
        if self.workers < 1:
            raise ExperimentError("workers must be positive")


def run_case(pos: Position, divisor: float, virtual_budget: float, step: float = 6.0,
             node_limit: int = DEFAULT_NODE_LIMIT, *, row_id: int = 1,
             scheduler: SchedulerKind = SchedulerKind.CONTINUOUS,
             mate_threshold: Optional[float] = None) -> ExperimentRow:
    params = SearchParams(scheduler=scheduler, virtual_budget=virtual_budget, step=step,
                          divisor=divisor, node_limit=node_limit)
    res = ers_search(pos, params)
    if res.aborted:
        solved = False
    elif mate_threshold is not None:
        solved = abs(res.value) >= mate_threshold
    else:
        solved = res.solved
    return ExperimentRow(row_id, res.stats.nodes, divisor, res.stats.max_ply_reached,
                         virtual_budget, int(solved), step)


def _run_row(args):
    pos, i, d, b, cfg = args
    return run_case(pos, d, b, cfg.step, cfg.node_limit, row_id=i,
                    scheduler=cfg.scheduler, mate_threshold=cfg.mate_threshold)


def run_sweep(cfg: ExperimentConfig, registry: Optional[PositionRegistry] = None,
              progress=None) -> List[ExperimentRow]:
    """One row per ``(divisor, budget)`` pair, numbered from 1 in config order."""
    pos = resolve_position(cfg.position_id, registry)
    jobs = [(pos, i, d, b, cfg) for i, (d, b) in enumerate(cfg.rows, 1)]
    if cfg.workers == 1:
        rows = []
        for job in jobs:
            row = _run_row(job)
            if progress is not None:
                progress(row)
            rows.append(row)
    else:
        with ProcessPoolExecutor(cfg.workers) as pool:
            rows = list(pool.map(_run_row, jobs))
    rows.sort(key=lambda r: r.id)
    return rows


# --------------------------------------------------------------------------
# config files


def _parse_rows(text: str) -> List[Tuple[float, float]]:
    rows = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            d, b = item.split(":")
            rows.append((float(d), float(b)))
        except ValueError:
            raise ExperimentError(f"bad row {item!r}; expected divisor:budget") from None
    return rows


_CONFIG_KEYS = {"position_id", "position", "rows", "step", "scheduler", "node_limit",
                "mate_threshold", "workers", "grid"}
_GRIDS = {"reference": REFERENCE_GRID, "desk": DESK_GRID}


def config_from_mapping(data: dict) -> ExperimentConfig:
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ExperimentError(f"unknown config keys: {', '.join(sorted(unknown))}")
    pid = data.get("position_id", data.get("position"))
    if not pid:
        raise ExperimentError("config needs position_id")
    rows = data.get("rows")
    if "grid" in data:
        if rows:
            raise ExperimentError("give either rows or grid, not both")
        name = data["grid"]
        if name not in _GRIDS:
            raise ExperimentError(f"unknown grid {name!r}")
        rows = _GRIDS[name]
    if isinstance(rows, str):
        rows = _parse_rows(rows)
    kw = {}
    for key, conv in (("step", float), ("scheduler", str), ("node_limit", int),
                      ("mate_threshold", float), ("workers", int)):
        if data.get(key) is not None:
            try:
                kw[key] = conv(data[key])
            except ValueError:
                raise ExperimentError(f"bad value for {key}: {data[key]!r}") from None
    try:
        return ExperimentConfig(position_id=str(pid), rows=tuple(rows or ()), **kw)
    except ValueError as exc:
        raise ExperimentError(str(exc)) from None


def parse_config(text: str) -> ExperimentConfig:
    """JSON object, or ``key = value`` lines (``#`` comments allowed)."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ExperimentError(f"bad JSON config: {exc}") from None
        if not isinstance(data, dict):
            raise ExperimentError("JSON config must be an object")
        return config_from_mapping(data)
    data = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ExperimentError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        data[key] = value
    return config_from_mapping(data)


def load_config(path: Union[str, os.PathLike]) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ExperimentError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


# --------------------------------------------------------------------------
# output


def _num(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def format_csv(rows: Sequence[ExperimentRow]) -> str:
    if not rows:
        raise ExperimentError("no rows to write")
    ids = [r.id for r in rows]
    if ids != sorted(ids) or len(set(ids)) != len(ids):
        raise ExperimentError("rows must be in strictly increasing id order")
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.id, r.nodes, _num(r.divisor), r.max_ply, _num(r.virtual_budget),
                    r.solved, _num(r.step)])
    return out.getvalue()


def emit_csv(rows: Sequence[ExperimentRow], destination) -> None:
    """Write the table to a path or a text stream."""
    text = format_csv(rows)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        Path(destination).write_text(text)
    except OSError as exc:
        raise ExperimentError(f"cannot write {destination}: {exc}") from None


def parse_csv(text: str) -> List[ExperimentRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ExperimentError("unexpected CSV header")
    rows = []
    for rec in reader:
        if not rec:
            continue
        i, nodes, d, ply, b, solved, step = rec
        rows.append(ExperimentRow(int(i), int(nodes), float(d), int(ply), float(b),
                                  int(solved), float(step)))
    return rows


SERIES_FILES = {
    "nodes_solved": "nodes_vs_divisor_solved.csv",
    "nodes_unsolved": "nodes_vs_divisor_unsolved.csv",
    "budget": "budget_vs_divisor.csv",
    "max_ply": "max_ply_vs_divisor.csv",
}


def plot_series(rows: Sequence[ExperimentRow]) -> Dict[str, List[tuple]]:
    if not rows:
        raise ExperimentError("no rows to plot")
    return {
        "nodes_solved": [(r.divisor, r.nodes) for r in rows if r.solved],
        "nodes_unsolved": [(r.divisor, r.nodes) for r in rows if not r.solved],
        "budget": [(r.divisor, r.virtual_budget, r.solved) for r in rows],
        "max_ply": [(r.divisor, r.max_ply) for r in rows],
    }


_SERIES_HEADERS = {
    "nodes_solved": ("divisor", "nodes"),
    "nodes_unsolved": ("divisor", "nodes"),
    "budget": ("divisor", "virtual_budget", "solved"),
    "max_ply": ("divisor", "max_ply"),
}


def emit_plot_series(rows: Sequence[ExperimentRow], directory) -> Dict[str, Path]:
    """Write the four series files into ``directory``; returns their paths."""
    series = plot_series(rows)
    out_dir = Path(directory)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ExperimentError(f"cannot create {out_dir}: {exc}") from None
    paths = {}
    for name, points in series.items():
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_SERIES_HEADERS[name])
        for pt in points:
            w.writerow([_num(v) if isinstance(v, float) else v for v in pt])
        path = out_dir / SERIES_FILES[name]
        try:
            path.write_text(buf.getvalue())
        except OSError as exc:
            raise ExperimentError(f"cannot write {path}: {exc}") from None
        paths[name] = path
    return paths


# --------------------------------------------------------------------------
# trend summaries


def min_solving_budget(rows: Sequence[ExperimentRow]) -> Dict[float, float]:
    """Smallest budget that solved the position, per divisor."""
    out: Dict[float, float] = {}
    for r in rows:
        if r.solved and (r.divisor not in out or r.virtual_budget < out[r.divisor]):
            out[r.divisor] = r.virtual_budget
    return dict(sorted(out.items()))


def min_nodes_to_solve(rows: Sequence[ExperimentRow]) -> Dict[float, int]:
    out: Dict[float, int] = {}
    for r in rows:
        if r.solved and (r.divisor not in out or r.nodes < out[r.divisor]):
            out[r.divisor] = r.nodes
    return dict(sorted(out.items()))


__all__ = [
    "CSV_HEADER", "DEFAULT_NODE_LIMIT", "ExperimentError", "RegistryEntry",
    "PositionRegistry", "DEFAULT_REGISTRY", "COMBINATION_EPD", "resolve_position",
    "REFERENCE_GRID", "REFERENCE_RESULTS", "DESK_GRID", "DESK_NODE_LIMIT", "divisor_levels", "ExperimentRow",
    "ExperimentConfig", "run_case", "run_sweep", "parse_config", "load_config",
    "config_from_mapping", "format_csv", "emit_csv", "parse_csv", "plot_series",
    "emit_plot_series", "SERIES_FILES", "min_solving_budget", "min_nodes_to_solve",
]

"""Partial-depth negamax alpha-beta (entropy reduction search).

Every move adds an increment to an accumulated *virtual depth*; a node is a
leaf once the virtual depth reaches the budget or the real ply count reaches
the hard cap.  Forcing moves are charged little or nothing, so forcing lines
reach far deeper than quiet ones within the same budget.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .board import MATERIAL, Move, Position, make_move
from .entropy import DEFAULT_MODEL, EntropyModel, classify_move, fractional_ply

INF = float("inf")
MATE_SCORE = 100_000


class SchedulerKind(str, enum.Enum):
    UNIFORM = "uniform"
    CATEGORICAL = "categorical"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class SearchParams:
    scheduler: SchedulerKind = SchedulerKind.CONTINUOUS
    virtual_budget: float = 16.0
    step: float = 6.0
    divisor: float = 1.0
    hard_ply_cap: Optional[int] = None
    mate_score: int = MATE_SCORE
    check_order_bonus: float = 10_000
    check_depth_threshold: float = 2_000
    node_limit: Optional[int] = None
    model: EntropyModel = field(default=DEFAULT_MODEL, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "scheduler", SchedulerKind(self.scheduler))
        if not self.virtual_budget >= 0:
            raise ValueError("virtual_budget must be >= 0")
        if not self.step > 0:
            raise ValueError("step must be > 0")
        if not self.divisor >= 1:
            raise ValueError("divisor must be >= 1")
        if self.hard_ply_cap is None:
            cap = 3 * math.ceil(self.virtual_budget / self.step) + 8
            object.__setattr__(self, "hard_ply_cap", cap)
        if self.hard_ply_cap < 1:
            raise ValueError("hard_ply_cap must be >= 1")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")
        if self.mate_score <= self.hard_ply_cap:
            raise ValueError("mate_score must exceed the ply cap")


@dataclass
class SearchStats:
    nodes: int = 0
    cutoffs: int = 0
    max_ply_reached: int = 0
    elapsed: float = 0.0


@dataclass
class SearchResult:
    value: Optional[float]
    principal_variation: List[Move]
    stats: SearchStats
    solved: bool
    aborted: bool = False


def evaluate(pos: Position, mate_score: int = MATE_SCORE) -> int:
    """Material balance for the side to move; mate and stalemate detected."""
    if not pos.has_legal_move():
        return -mate_score if pos.in_check() else 0
    return pos.material * pos.turn


def mate_distance_adjust(raw: float, ply: int, mate_score: int = MATE_SCORE) -> float:
    if raw >= mate_score:
        return mate_score - ply
    if raw <= -mate_score:
        return -mate_score + ply
    return raw


def is_mate_value(value: float, params: SearchParams) -> bool:
    return abs(value) >= params.mate_score - params.hard_ply_cap


def _ordering(pos: Position, parent_eval: float, moves, params: SearchParams):
    """(key, move, child) triples sorted by descending key, stable."""
    scored = []
    bonus = params.check_order_bonus
    mate = params.mate_score
    for m in moves:
        child = make_move(pos, m)
        # generated moves carry an exact check flag; spare the attack scan
        child._in_check = m.gives_check
        key = abs(-evaluate(child, mate) - parent_eval)
        if m.gives_check:
            key += bonus
        scored.append((key, m, child))
    scored.sort(key=lambda t: -t[0])
    return scored


def order_moves(pos: Position, parent_eval: float, moves, params: Optional[SearchParams] = None) -> List[Move]:
    """Moves sorted by |evaluation change| plus a bonus for checks."""
    params = params or SearchParams()
    return [m for _, m, _ in _ordering(pos, parent_eval, moves, params)]


def depth_increment_continuous(eval_delta: float, branching: int, params: SearchParams) -> float:
    if eval_delta > params.check_depth_threshold:
        return 0.0
    add = math.log10(abs(0.1 + eval_delta / 100.0)) + 5.0 / math.log(branching + 2)
    inc = params.step - add / params.divisor
    return min(params.step, max(0.0, inc))


def depth_increment_categorical(category, model: EntropyModel, params: SearchParams) -> float:
    return params.step * fractional_ply(model, category)


class _Abort(Exception):
    pass


class _Searcher:
    def __init__(self, params: SearchParams):
        self.p = params
        self.stats = SearchStats()
        self.pv: List[List[Move]] = [[] for _ in range(params.hard_ply_cap + 2)]
        self.limit = params.node_limit if params.node_limit is not None else -1

    def increment(self, pos: Position, key: float, move: Move, branching: int) -> float:
        p = self.p
        if p.scheduler is SchedulerKind.UNIFORM:
            return p.step
        if p.scheduler is SchedulerKind.CATEGORICAL:
            return depth_increment_categorical(classify_move(pos, move), p.model, p)
        return depth_increment_continuous(key, branching, p)

    def search(self, pos: Position, alpha: float, beta: float, ply: int, vdepth: float) -> float:
        stats = self.stats
        if stats.nodes == self.limit:
            raise _Abort
        stats.nodes += 1
        if ply > stats.max_ply_reached:
            stats.max_ply_reached = ply
        p = self.p
        self.pv[ply] = []
        if vdepth >= p.virtual_budget or ply >= p.hard_ply_cap:
            return mate_distance_adjust(evaluate(pos, p.mate_score), ply, p.mate_score)
        moves = pos.legal_moves()
        if not moves:
            return -(p.mate_score - ply) if pos.in_check() else 0
        parent_eval = pos.material * pos.turn
        n = len(moves)
        best = -INF
        for key, m, child in _ordering(pos, parent_eval, moves, p):
            inc = self.increment(pos, key, m, n)
            v = -self.search(child, -beta, -alpha, ply + 1, vdepth + inc)
            if v > best:
                best = v
                self.pv[ply] = [m] + self.pv[ply + 1]
            if v > alpha:
                alpha = v
            if alpha >= beta:
                stats.cutoffs += 1
                break
        return best


def ers_search(pos: Position, params: SearchParams) -> SearchResult:
    """Run one partial-depth search from ``pos`` with a full window."""
    if not isinstance(params, SearchParams):
        raise TypeError("params must be SearchParams")
    s = _Searcher(params)
    t0 = time.perf_counter()
    try:
        value = s.search(pos, -INF, INF, 0, 0.0)
        aborted = False
    except _Abort:
        value, aborted = None, True
    s.stats.elapsed = time.perf_counter() - t0
    if aborted:
        return SearchResult(None, [], s.stats, False, True)
    solved = is_mate_value(value, params)
    return SearchResult(value, list(s.pv[0]), s.stats, solved)


def replay(pos: Position, moves) -> Tuple[Position, List[Position]]:
    """Apply a move sequence with legality checks; returns final and trail."""
    from .board import apply_move

    trail = [pos]
    for m in moves:
        pos = apply_move(pos, m)
        trail.append(pos)
    return pos, trail


__all__ = [
    "SchedulerKind", "SearchParams", "SearchStats", "SearchResult", "evaluate",
    "order_moves", "depth_increment_continuous", "depth_increment_categorical",
    "ers_search", "mate_distance_adjust", "is_mate_value", "replay", "MATERIAL",
]

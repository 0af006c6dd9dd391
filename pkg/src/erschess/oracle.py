"""Brute-force reference searches used to certify the fast code paths.

Nothing here uses fractional depth, and move ordering is only applied when
a caller asks for it.  Leaf evaluation re-derives material from the raw
board instead of trusting the incrementally maintained balance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .board import BLACK, WHITE, Move, Position, _legal_moves, make_move

MATE_SCORE = 100_000

_VALUES = (0, 100, 300, 300, 500, 900, 0)


@dataclass(frozen=True)
class OracleResult:
    value: float
    nodes: int


def material_eval(pos: Position, mate_score: int = MATE_SCORE) -> int:
    """Static value for the side to move, recomputed from the board."""
    # the plain generator, not the cached shortcut the search relies on
    if next(_legal_moves(pos, False), None) is None:
        return -mate_score if pos.in_check() else 0
    score = 0
    for code in pos.board:
        if code > 0:
            score += _VALUES[code]
        elif code < 0:
            score -= _VALUES[-code]
    return score if pos.turn == WHITE else -score


def _leaf(pos: Position, ply: int, mate_score: int) -> int:
    v = material_eval(pos, mate_score)
    if v == -mate_score:
        return v + ply
    return v


def minimax_value(pos: Position, depth: int, mate_score: int = MATE_SCORE) -> OracleResult:
    """Exhaustive negamax to a fixed depth."""
    counter = [0]

    def rec(p: Position, d: int, ply: int) -> float:
        counter[0] += 1
        if d == 0:
            return _leaf(p, ply, mate_score)
        moves = p.legal_moves()
        if not moves:
            return -(mate_score - ply) if p.in_check() else 0
        return max(-rec(make_move(p, m), d - 1, ply + 1) for m in moves)

    value = rec(pos, depth, 0)
    return OracleResult(value, counter[0])


OrderFn = Callable[[Position, List[Move]], List[Move]]


def alphabeta_value(pos: Position, depth: int, order: Optional[OrderFn] = None,
                    mate_score: int = MATE_SCORE) -> OracleResult:
    """Fixed-depth fail-soft alpha-beta; ``order`` reorders each move list."""
    counter = [0]
    inf = float("inf")

    def rec(p: Position, d: int, ply: int, alpha: float, beta: float) -> float:
        counter[0] += 1
        if d == 0:
            return _leaf(p, ply, mate_score)
        moves = p.legal_moves()
        if not moves:
            return -(mate_score - ply) if p.in_check() else 0
        if order is not None:
            moves = order(p, moves)
        best = -inf
        for m in moves:
            v = -rec(make_move(p, m), d - 1, ply + 1, -beta, -alpha)
            best = max(best, v)
            alpha = max(alpha, v)
            if alpha >= beta:
                break
        return best

    value = rec(pos, depth, 0, -inf, inf)
    return OracleResult(value, counter[0])


# --------------------------------------------------------------------------
# forced-mate prover


class OracleBudgetExceeded(RuntimeError):
    pass


class _MateProver:
    def __init__(self, checks_only: bool, max_nodes: Optional[int]):
        self.checks_only = checks_only
        self.max_nodes = max_nodes
        self.nodes = 0
        # key -> smallest n proven / largest n refuted, attacker to move
        self.proven: Dict[tuple, int] = {}
        self.refuted: Dict[tuple, int] = {}

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise OracleBudgetExceeded(f"mate prover exceeded {self.max_nodes} nodes")

    def attacker(self, pos: Position, n: int) -> bool:
        """Can the side to move force mate in at most ``n`` moves?"""
        key = pos.placement_key()
        known = self.proven.get(key)
        if known is not None and known <= n:
            return True
        if self.refuted.get(key, 0) >= n:
            return False
        self._tick()
        moves = pos.legal_moves()
        checks = [m for m in moves if m.gives_check]
        if n == 1 or self.checks_only:
            cand = checks
        else:
            quiet = [m for m in moves if not m.gives_check]
            quiet.sort(key=lambda m: m.captured is None)
            cand = checks + quiet
        for m in cand:
            if self.defender(make_move(pos, m), n - 1):
                if known is None or n < known:
                    self.proven[key] = n
                return True
        self.refuted[key] = max(self.refuted.get(key, 0), n)
        return False

    def defender(self, pos: Position, n: int) -> bool:
        """Is every reply of the side to move answered by mate in ``n``?"""
        self._tick()
        moves = pos.legal_moves()
        if not moves:
            return pos.in_check()
        if n == 0:
            return False
        ordered = sorted(moves, key=lambda m: (not m.gives_check, m.captured is None))
        for m in ordered:
            if not self.attacker(make_move(pos, m), n):
                return False
        return True


def mate_in(pos: Position, max_moves: int, checks_only: bool = False,
            max_nodes: Optional[int] = None) -> Optional[int]:
    """Shortest forced mate (in moves) up to ``max_moves``, else None."""
    prover = _MateProver(checks_only, max_nodes)
    for n in range(1, max_moves + 1):
        if prover.attacker(pos, n):
            return n
    return None


def certify_mate(pos: Position, plies: int, max_nodes: Optional[int] = None) -> bool:
    """True iff the side to move forces mate within ``plies`` half-moves.

    A checks-only proof is tried first; it is sound for a positive answer
    because restricting the attacker can only make mating harder.  Failing
    that, the exact full-width prover decides.
    """
    if plies < 1:
        return False
    n = (plies + 1) // 2
    if mate_in(pos, n, checks_only=True, max_nodes=max_nodes) is not None:
        return True
    return mate_in(pos, n, max_nodes=max_nodes) is not None


def certify_first_move(pos: Position, move: Move, plies: int,
                       max_nodes: Optional[int] = None) -> bool:
    """True iff playing ``move`` still forces mate within ``plies`` half-moves."""
    key = move.key()
    legal = [m for m in pos.legal_moves() if m.key() == key]
    if not legal or plies < 1:
        return False
    child = make_move(pos, legal[0])
    n = (plies + 1) // 2 - 1
    for checks_only in (True, False):
        prover = _MateProver(checks_only, max_nodes)
        # deepen gradually so the tables steer long proofs
        if any(prover.defender(child, k) for k in range(n + 1)):
            return True
    return False


# --------------------------------------------------------------------------
# independent move enumerator for perft


_KNIGHT_STEPS = ((1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2))
_KING_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1))
_ROOK_DIRS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_BISHOP_DIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _on(f: int, r: int) -> bool:
    return 0 <= f < 8 and 0 <= r < 8


def _square_attacked(grid, f: int, r: int, by: int) -> bool:
    for df, dr in _KNIGHT_STEPS:
        if _on(f + df, r + dr) and grid[r + dr][f + df] == 2 * by:
            return True
    for df, dr in _KING_STEPS:
        if _on(f + df, r + dr) and grid[r + dr][f + df] == 6 * by:
            return True
    pr = r - by
    for df in (-1, 1):
        if _on(f + df, pr) and grid[pr][f + df] == by:
            return True
    for dirs, slider in ((_ROOK_DIRS, 4), (_BISHOP_DIRS, 3)):
        for df, dr in dirs:
            x, y = f + df, r + dr
            while _on(x, y):
                p = grid[y][x]
                if p:
                    if p == slider * by or p == 5 * by:
                        return True
                    break
                x += df
                y += dr
    return False


class _State:
    __slots__ = ("grid", "turn", "castle", "ep")

    def __init__(self, grid, turn, castle, ep):
        self.grid = grid
        self.turn = turn
        self.castle = castle  # set of "K", "Q", "k", "q"
        self.ep = ep  # (file, rank) or None


def _state_from_position(pos: Position) -> _State:
    grid = [[pos.board[r * 8 + f] for f in range(8)] for r in range(8)]
    rights = set()
    for ch, flag in zip("KQkq", pos.castling_rights):
        if flag:
            rights.add(ch)
    ep = None if pos.ep is None else (pos.ep % 8, pos.ep // 8)
    return _State(grid, pos.turn, frozenset(rights), ep)


def _king(grid, color):
    for r in range(8):
        for f in range(8):
            if grid[r][f] == 6 * color:
                return f, r
    raise ValueError("no king")


def _pseudo_moves(st: _State):
    """Yield (new_grid, castle, ep) for each pseudo-legal move."""
    g, us = st.grid, st.turn
    home = 0 if us == WHITE else 7
    for r in range(8):
        for f in range(8):
            p = g[r][f]
            if p * us <= 0:
                continue
            kind = abs(p)
            targets = []
            if kind == 1:
                r1 = r + us
                if _on(f, r1) and g[r1][f] == 0:
                    targets.append((f, r1, None))
                    r2 = r + 2 * us
                    if r == home + us and g[r2][f] == 0:
                        targets.append((f, r2, "double"))
                for df in (-1, 1):
                    x = f + df
                    if not _on(x, r1):
                        continue
                    if g[r1][x] * us < 0:
                        targets.append((x, r1, None))
                    elif st.ep == (x, r1):
                        targets.append((x, r1, "ep"))
            elif kind in (2, 6):
                steps = _KNIGHT_STEPS if kind == 2 else _KING_STEPS
                for df, dr in steps:
                    x, y = f + df, r + dr
                    if _on(x, y) and g[y][x] * us <= 0:
                        targets.append((x, y, None))
            else:
                dirs = {3: _BISHOP_DIRS, 4: _ROOK_DIRS, 5: _ROOK_DIRS + _BISHOP_DIRS}[kind]
                for df, dr in dirs:
                    x, y = f + df, r + dr
                    while _on(x, y) and g[y][x] * us <= 0:
                        targets.append((x, y, None))
                        if g[y][x]:
                            break
                        x += df
                        y += dr
            for x, y, tag in targets:
                promos = (5, 4, 3, 2) if kind == 1 and y in (0, 7) else (None,)
                for promo in promos:
                    ng = [row[:] for row in g]
                    ng[r][f] = 0
                    ng[y][x] = promo * us if promo else p
                    if tag == "ep":
                        ng[r][x] = 0
                    new_ep = (f, r + us) if tag == "double" else None
                    yield ng, _castle_after(st.castle, (f, r), (x, y)), new_ep
    # castling
    for side, kf, rf, path, safe in (("K", 4, 7, (5, 6), (4, 5, 6)),
                                      ("Q", 4, 0, (1, 2, 3), (4, 3, 2))):
        flag = side if us == WHITE else side.lower()
        if flag not in st.castle:
            continue
        if g[home][kf] != 6 * us or g[home][rf] != 4 * us:
            continue
        if any(g[home][x] for x in path):
            continue
        if any(_square_attacked(g, x, home, -us) for x in safe):
            continue
        ng = [row[:] for row in g]
        ng[home][kf] = 0
        ng[home][rf] = 0
        ng[home][6 if side == "K" else 2] = 6 * us
        ng[home][5 if side == "K" else 3] = 4 * us
        yield ng, _castle_after(st.castle, (kf, home), (kf, home)), None


def _castle_after(castle, frm, to):
    lost = set()
    for sq in (frm, to):
        if sq == (4, 0):
            lost |= {"K", "Q"}
        elif sq == (4, 7):
            lost |= {"k", "q"}
        elif sq == (0, 0):
            lost.add("Q")
        elif sq == (7, 0):
            lost.add("K")
        elif sq == (0, 7):
            lost.add("q")
        elif sq == (7, 7):
            lost.add("k")
    return castle - lost


def _legal_children(st: _State):
    for ng, castle, ep in _pseudo_moves(st):
        kf, kr = _king(ng, st.turn)
        if not _square_attacked(ng, kf, kr, -st.turn):
            yield _State(ng, -st.turn, castle, ep)


def brute_force_perft(pos: Position, depth: int) -> int:
    """Leaf count using a standalone pseudo-legal generator + king test."""
    def rec(st: _State, d: int) -> int:
        if d == 0:
            return 1
        return sum(rec(child, d - 1) for child in _legal_children(st))

    return rec(_state_from_position(pos), depth)


def brute_force_move_count(pos: Position) -> int:
    return sum(1 for _ in _legal_children(_state_from_position(pos)))


__all__ = [
    "OracleResult", "minimax_value", "alphabeta_value", "certify_mate", "mate_in",
    "certify_first_move",
    "brute_force_perft", "brute_force_move_count", "material_eval",
    "OracleBudgetExceeded", "BLACK",
]

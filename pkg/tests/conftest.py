import random
import sys

import pytest

from erschess.board import FenError, Position, make_move, parse_fen, start_position, to_fen

PERFT_FENS = {
    "start": "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1",
    "kiwipete": "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
    "endgame": "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
    "promotions": "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1",
    "talkchess": "rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8",
}

COMBINATION_FEN = "1n1k1r2/pp2R3/5P2/3P4/q1pQ4/8/6PP/6BK w - - 0 1"


def random_positions(n, seed=1234, min_plies=4, max_plies=40, seeds_from=None):
    """Positions reached by seeded random walks; walks stop early at mate."""
    rng = random.Random(seed)
    bases = [parse_fen(f) for f in (seeds_from or PERFT_FENS.values())]
    out = []
    while len(out) < n:
        pos = rng.choice(bases)
        for _ in range(rng.randint(min_plies, max_plies)):
            moves = pos.legal_moves()
            if not moves:
                break
            pos = make_move(pos, rng.choice(moves))
        out.append(pos)
    return out


def random_placements(n, seed=4321, max_extra=6):
    """Sparse random boards: two kings plus a few random pieces."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        board = [0] * 64
        wk, bk = rng.sample(range(64), 2)
        if abs(wk % 8 - bk % 8) <= 1 and abs(wk // 8 - bk // 8) <= 1:
            continue
        board[wk], board[bk] = 6, -6
        for _ in range(rng.randint(1, max_extra)):
            sq = rng.choice([s for s in range(64) if board[s] == 0])
            kind = rng.randint(1, 5)
            if kind == 1 and sq // 8 in (0, 7):
                continue
            board[sq] = kind * rng.choice((1, -1))
        pos = Position(board, rng.choice((1, -1)))
        try:
            out.append(parse_fen(to_fen(pos)))
        except FenError:
            continue  # side not to move left in check
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])


@pytest.fixture(scope="session")
def combination():
    return parse_fen(COMBINATION_FEN)


@pytest.fixture
def start():
    return start_position()

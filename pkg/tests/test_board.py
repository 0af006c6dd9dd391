import random

import chess
import pytest
from hypothesis import given, settings, strategies as st

from erschess.board import (BLACK, WHITE, FenError, IllegalMoveError, Move, Position,
                            apply_move, descriptive, make_move, parse_epd, parse_fen,
                            parse_square, perft, san, square_name, start_position, to_epd,
                            to_fen)
from erschess.oracle import brute_force_perft

from conftest import COMBINATION_FEN, PERFT_FENS, random_positions


class TestSquares:
    @pytest.mark.parametrize("name,idx", [("a1", 0), ("h1", 7), ("a8", 56), ("h8", 63), ("e4", 28)])
    def test_round_trip(self, name, idx):
        assert parse_square(name) == idx
        assert square_name(idx) == name

    @pytest.mark.parametrize("bad", ["i1", "a9", "", "e44"])
    def test_bad_square(self, bad):
        with pytest.raises(ValueError):
            parse_square(bad)


class TestFen:
    @pytest.mark.parametrize("fen", list(PERFT_FENS.values()) + [COMBINATION_FEN])
    def test_round_trip(self, fen):
        assert to_fen(parse_fen(fen)) == fen

    def test_start_fields(self):
        pos = start_position()
        assert pos.turn == WHITE
        assert pos.castling_rights == (True, True, True, True)
        assert pos.ep is None and pos.material == 0

    @pytest.mark.parametrize("fen,msg", [
        ("8/8/8/8/8/8/8/8 w - - 0", "6 fields"),
        ("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNX w KQkq - 0 1", "piece"),
        ("8/8/8/8/8/8/8/4K3 w - - 0 1", "king"),
        ("4k3/8/8/8/8/8/8/3KK3 w - - 0 1", "king"),
        ("P3k3/8/8/8/8/8/8/4K3 w - - 0 1", "rank"),
        ("4k3/8/8/8/8/8/8/4K3 w - e4 0 1", "en passant"),
        ("4k3/8/8/8/8/8/8/R3K3 b - - 0 1", None),
        ("4k3/4R3/8/8/8/8/8/4K3 w - - 0 1", "check"),
        ("4k3/8/8/8/8/8/8/4K3 x - - 0 1", None),
    ])
    def test_rejects(self, fen, msg):
        if msg is None and fen.endswith("b - - 0 1"):
            parse_fen(fen)  # legal: black to move, nobody in check
            return
        with pytest.raises(FenError) as err:
            parse_fen(fen)
        if msg:
            assert msg in str(err.value)

    def test_value_semantics(self):
        a = parse_fen(PERFT_FENS["kiwipete"])
        b = parse_fen(PERFT_FENS["kiwipete"])
        assert a == b and hash(a) == hash(b)
        assert a != start_position()

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_walk_round_trip(self, seed):
        pos = random_positions(1, seed=seed)[0]
        assert parse_fen(to_fen(pos)) == pos


class TestEpd:
    def test_operations(self):
        pos, ops = parse_epd('1n1k1r2/pp2R3/5P2/3P4/q1pQ4/8/6PP/6BK w - - bm Qb6+; dm 7; id "x y";')
        assert ops == {"bm": "Qb6+", "dm": "7", "id": "x y"}
        assert pos.placement_key() == parse_fen(COMBINATION_FEN).placement_key()

    def test_clock_opcodes(self):
        pos, _ = parse_epd("4k3/8/8/8/8/8/8/4K3 w - - hmvc 12; fmvn 30;")
        assert (pos.halfmove, pos.fullmove) == (12, 30)

    def test_too_few_fields(self):
        with pytest.raises(FenError):
            parse_epd("4k3/8/8/8/8/8/8/4K3 w -")

    def test_round_trip(self):
        pos = parse_fen(COMBINATION_FEN)
        text = to_epd(pos, {"dm": "7"})
        again, ops = parse_epd(text)
        assert again.placement_key() == pos.placement_key() and ops["dm"] == "7"


class TestPerft:
    @pytest.mark.parametrize("depth,expected", [(1, 20), (2, 400), (3, 8902), (4, 197281)])
    def test_start(self, depth, expected):
        assert perft(start_position(), depth) == expected

    @pytest.mark.parametrize("name,expected", [
        ("kiwipete", [48, 2039, 97862]),
        ("endgame", [14, 191, 2812, 43238]),
        ("promotions", [6, 264, 9467]),
        ("talkchess", [44, 1486, 62379]),
    ])
    def test_reference(self, name, expected):
        pos = parse_fen(PERFT_FENS[name])
        assert [perft(pos, d) for d in range(1, len(expected) + 1)] == expected

    def test_depth_zero(self):
        assert perft(start_position(), 0) == 1

    @pytest.mark.parametrize("seed", range(5))
    def test_random_against_brute_force(self, seed):
        for pos in random_positions(4, seed=100 + seed):
            assert perft(pos, 2) == brute_force_perft(pos, 2)


class TestAgainstPythonChess:
    """python-chess serves as a third, independent rules implementation."""

    def test_moves_and_check_flags(self):
        for pos in random_positions(150, seed=99, max_plies=80):
            ref = chess.Board(to_fen(pos))
            ours = {m.uci(): m.gives_check for m in pos.legal_moves()}
            theirs = {m.uci(): ref.gives_check(m) for m in ref.legal_moves}
            assert ours == theirs, to_fen(pos)

    def test_fen_after_random_games(self):
        rng = random.Random(5)
        for _ in range(30):
            pos, ref = start_position(), chess.Board()
            for _ in range(60):
                moves = pos.legal_moves()
                if not moves:
                    break
                m = rng.choice(moves)
                pos = make_move(pos, m)
                ref.push_uci(m.uci())
                assert to_fen(pos) == ref.fen(en_passant="fen")

    def test_mate_and_stalemate_flags(self):
        for pos in random_positions(150, seed=3, max_plies=120):
            ref = chess.Board(to_fen(pos))
            assert pos.is_checkmate() == ref.is_checkmate()
            assert pos.is_stalemate() == ref.is_stalemate()
            assert pos.in_check() == ref.is_check()


class TestMoves:
    def test_uci_round_trip(self):
        m = Move.from_uci("e7e8q")
        assert m.uci() == "e7e8q" and m.promotion == 5

    def test_illegal_move_rejected(self):
        with pytest.raises(IllegalMoveError):
            apply_move(start_position(), Move.from_uci("e2e5"))

    def test_push_is_pure(self):
        pos = start_position()
        child = pos.push_uci("e2e4")
        assert to_fen(pos) == PERFT_FENS["start"]
        assert child.ep == parse_square("e3") and child.turn == BLACK

    def test_castling_clears_rights(self):
        pos = parse_fen(PERFT_FENS["kiwipete"]).push_uci("e1g1")
        assert pos.castling_rights == (False, False, True, True)
        assert pos.piece_at(parse_square("f1")).symbol == "R"

    def test_en_passant_capture(self):
        pos = parse_fen("4k3/8/8/3pP3/8/8/8/4K3 w - d6 0 2").push_uci("e5d6")
        assert pos.piece_at(parse_square("d5")) is None
        assert pos.material == 100

    def test_pinned_piece_cannot_move(self):
        pos = parse_fen("4k3/4r3/8/8/8/8/4N3/4K3 w - - 0 1")
        assert all(m.from_sq != parse_square("e2") for m in pos.legal_moves())

    def test_discovered_check_flag(self):
        pos = parse_fen("4k3/8/8/8/8/8/4N3/4R1K1 w - - 0 1")
        m = next(m for m in pos.legal_moves() if m.uci() == "e2c3")
        assert m.gives_check


class TestNotation:
    def test_san_line(self, combination):
        line = ["d4b6", "a7b6", "g1b6", "d8c8", "e7c7", "c8d8", "c7f7", "d8c8",
                "f7f8", "a4e8", "f8e8", "c8d7", "e8d8"]
        out, pos = [], combination
        for u in line:
            m = Move.from_uci(u)
            out.append(san(pos, m))
            pos = pos.push(m)
        assert out == ["Qb6+", "axb6", "Bxb6+", "Kc8", "Rc7+", "Kd8", "Rf7+", "Kc8",
                       "Rxf8+", "Qe8", "Rxe8+", "Kd7", "Rd8#"]
        assert pos.is_checkmate()

    def test_descriptive(self, combination):
        assert descriptive(combination, Move.from_uci("d4b6")) == "Q-QN6ch"
        after = combination.push_uci("d4b6")
        assert descriptive(after, Move.from_uci("a7b6")) == "PxQ"

    def test_san_disambiguation(self):
        pos = parse_fen("4k3/8/8/8/8/8/4K3/R6R w - - 0 1")
        assert san(pos, Move.from_uci("a1d1")) == "Rad1"

    def test_san_castle(self):
        pos = parse_fen(PERFT_FENS["kiwipete"])
        assert san(pos, Move.from_uci("e1c1")) == "O-O-O"

"""Chess rules substrate: positions, FEN/EPD parsing, legal move generation.

Squares are integers 0..63 with a1 = 0, b1 = 1, ..., h8 = 63.  Pieces on the
board are signed integers: positive for white, negative for black, with the
magnitude giving the kind (1 pawn .. 6 king).  ``Position`` and ``Move`` are
immutable values; every operation returns a new object.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

WHITE = 1
BLACK = -1

PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = 1, 2, 3, 4, 5, 6
PIECE_KINDS = (PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING)
KIND_NAMES = {PAWN: "pawn", KNIGHT: "knight", BISHOP: "bishop",
              ROOK: "rook", QUEEN: "queen", KING: "king"}
KIND_LETTERS = {PAWN: "p", KNIGHT: "n", BISHOP: "b", ROOK: "r", QUEEN: "q", KING: "k"}
LETTER_KINDS = {v: k for k, v in KIND_LETTERS.items()}

FILE_NAMES = "abcdefgh"
START_FEN = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"

# castling right bits
WK, WQ, BK, BQ = 1, 2, 4, 8
_CASTLE_CHARS = (("K", WK), ("Q", WQ), ("k", BK), ("q", BQ))


class FenError(ValueError):
    """Raised for FEN/EPD text that does not describe a legal position."""


class IllegalMoveError(ValueError):
    """Raised when a move is not legal in the given position."""


def square(file: int, rank: int) -> int:
    return rank * 8 + file


def square_file(sq: int) -> int:
    return sq & 7


def square_rank(sq: int) -> int:
    return sq >> 3


def square_name(sq: int) -> str:
    return FILE_NAMES[sq & 7] + str((sq >> 3) + 1)


def parse_square(name: str) -> int:
    if len(name) != 2 or name[0] not in FILE_NAMES or name[1] not in "12345678":
        raise ValueError(f"bad square name {name!r}")
    return square(FILE_NAMES.index(name[0]), int(name[1]) - 1)


@dataclass(frozen=True)
class Piece:
    kind: int
    color: int

    @property
    def symbol(self) -> str:
        letter = KIND_LETTERS[self.kind]
        return letter.upper() if self.color == WHITE else letter

    @property
    def code(self) -> int:
        return self.kind * self.color

    @classmethod
    def from_code(cls, code: int) -> "Piece":
        return cls(abs(code), WHITE if code > 0 else BLACK)


# --------------------------------------------------------------------------
# precomputed geometry

_ORTH = ((0, 1), (0, -1), (1, 0), (-1, 0))
_DIAG = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_DIRS = _ORTH + _DIAG  # direction index < 4 is orthogonal


def _walk(sq: int, df: int, dr: int) -> Tuple[int, ...]:
    f, r = sq & 7, sq >> 3
    out = []
    f += df
    r += dr
    while 0 <= f < 8 and 0 <= r < 8:
        out.append(r * 8 + f)
        f += df
        r += dr
    return tuple(out)


def _jumps(sq: int, deltas) -> Tuple[int, ...]:
    f, r = sq & 7, sq >> 3
    return tuple((r + dr) * 8 + f + df for df, dr in deltas
                 if 0 <= f + df < 8 and 0 <= r + dr < 8)


RAYS = tuple(tuple(_walk(s, df, dr) for df, dr in _DIRS) for s in range(64))
ORTH_RAYS = tuple(RAYS[s][:4] for s in range(64))
DIAG_RAYS = tuple(RAYS[s][4:] for s in range(64))
KNIGHT_TARGETS = tuple(_jumps(s, ((1, 2), (2, 1), (2, -1), (1, -2), (-1, -2),
                                  (-2, -1), (-2, 1), (-1, 2))) for s in range(64))
KING_TARGETS = tuple(_jumps(s, _DIRS) for s in range(64))
# PAWN_ATTACKS[color][sq]: squares attacked by a pawn of `color` standing on sq
PAWN_ATTACKS = {WHITE: tuple(_jumps(s, ((-1, 1), (1, 1))) for s in range(64)),
                BLACK: tuple(_jumps(s, ((-1, -1), (1, -1))) for s in range(64))}
KNIGHT_SETS = tuple(frozenset(t) for t in KNIGHT_TARGETS)

# DIRECTION[a][b]: index into _DIRS of the ray from a through b, or -1
DIRECTION = [[-1] * 64 for _ in range(64)]
BETWEEN: List[List[Tuple[int, ...]]] = [[()] * 64 for _ in range(64)]
for _a in range(64):
    for _d, _ray in enumerate(RAYS[_a]):
        for _i, _b in enumerate(_ray):
            DIRECTION[_a][_b] = _d
            BETWEEN[_a][_b] = _ray[:_i]
DIRECTION = tuple(tuple(row) for row in DIRECTION)
BETWEEN = tuple(tuple(row) for row in BETWEEN)

# castling rights lost when a move touches a square
_CASTLE_MASK = [15] * 64
_CASTLE_MASK[4] = 15 & ~(WK | WQ)
_CASTLE_MASK[0] = 15 & ~WQ
_CASTLE_MASK[7] = 15 & ~WK
_CASTLE_MASK[60] = 15 & ~(BK | BQ)
_CASTLE_MASK[56] = 15 & ~BQ
_CASTLE_MASK[63] = 15 & ~BK
_CASTLE_MASK = tuple(_CASTLE_MASK)

MATERIAL = {PAWN: 100, KNIGHT: 300, BISHOP: 300, ROOK: 500, QUEEN: 900, KING: 0}
_CODE_VALUE = {0: 0}
for _k, _v in MATERIAL.items():
    _CODE_VALUE[_k] = _v
    _CODE_VALUE[-_k] = -_v


def attacked(board, sq: int, by: int) -> bool:
    """True if any piece of color ``by`` attacks ``sq`` on ``board``."""
    knight = 2 * by
    for t in KNIGHT_TARGETS[sq]:
        if board[t] == knight:
            return True
    king = 6 * by
    for t in KING_TARGETS[sq]:
        if board[t] == king:
            return True
    for t in PAWN_ATTACKS[-by][sq]:
        if board[t] == by:
            return True
    rook, queen, bishop = 4 * by, 5 * by, 3 * by
    for ray in ORTH_RAYS[sq]:
        for t in ray:
            p = board[t]
            if p:
                if p == rook or p == queen:
                    return True
                break
    for ray in DIAG_RAYS[sq]:
        for t in ray:
            p = board[t]
            if p:
                if p == bishop or p == queen:
                    return True
                break
    return False


def attackers(board, sq: int, by: int) -> List[int]:
    """Squares of all pieces of color ``by`` attacking ``sq``."""
    out = [t for t in KNIGHT_TARGETS[sq] if board[t] == 2 * by]
    out += [t for t in KING_TARGETS[sq] if board[t] == 6 * by]
    out += [t for t in PAWN_ATTACKS[-by][sq] if board[t] == by]
    for d, ray in enumerate(RAYS[sq]):
        slider = 4 * by if d < 4 else 3 * by
        for t in ray:
            p = board[t]
            if p:
                if p == slider or p == 5 * by:
                    out.append(t)
                break
    return out


# --------------------------------------------------------------------------
# moves


class Move(NamedTuple):
    """A half-move.  ``captured`` and ``gives_check`` are filled in by the
    generator; user-constructed moves may leave them at their defaults."""

    from_sq: int
    to_sq: int
    promotion: Optional[int] = None
    captured: Optional[int] = None
    gives_check: bool = False

    @property
    def is_capture(self) -> bool:
        return self.captured is not None

    @property
    def captured_kind(self) -> Optional[int]:
        return self.captured

    def uci(self) -> str:
        s = square_name(self.from_sq) + square_name(self.to_sq)
        if self.promotion:
            s += KIND_LETTERS[self.promotion]
        return s

    @classmethod
    def from_uci(cls, text: str) -> "Move":
        if len(text) not in (4, 5):
            raise ValueError(f"bad uci move {text!r}")
        promo = LETTER_KINDS[text[4].lower()] if len(text) == 5 else None
        return cls(parse_square(text[:2]), parse_square(text[2:4]), promo)

    def key(self) -> Tuple[int, int, Optional[int]]:
        return (self.from_sq, self.to_sq, self.promotion)

    def __str__(self) -> str:
        return self.uci()


MoveList = List[Move]


# --------------------------------------------------------------------------
# position


class Position:
    """Immutable chess position.

    ``board`` is a 64-tuple of signed piece codes.  Legal moves, the check
    flag and the material balance are computed lazily and memoised.
    """

    __slots__ = ("board", "turn", "castling", "ep", "halfmove", "fullmove",
                 "kings", "material", "_legal", "_in_check", "_has_move")

    def __init__(self, board, turn: int = WHITE, castling: int = 0,
                 ep: Optional[int] = None, halfmove: int = 0, fullmove: int = 1,
                 *, _kings=None, _material=None):
        self.board = tuple(board)
        self.turn = turn
        self.castling = castling
        self.ep = ep
        self.halfmove = halfmove
        self.fullmove = fullmove
        if _kings is None:
            wk = [s for s in range(64) if self.board[s] == KING]
            bk = [s for s in range(64) if self.board[s] == -KING]
            _kings = (wk[0] if len(wk) == 1 else -1, bk[0] if len(bk) == 1 else -1)
        self.kings = _kings
        if _material is None:
            _material = sum(_CODE_VALUE[p] for p in self.board)
        self.material = _material
        self._legal = None
        self._in_check = None
        self._has_move = None

    # value semantics
    def _fields(self):
        return (self.board, self.turn, self.castling, self.ep, self.halfmove, self.fullmove)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Position):
            return NotImplemented
        return self._fields() == other._fields()

    def __hash__(self) -> int:
        return hash(self._fields())

    def __repr__(self) -> str:
        return f"Position({to_fen(self)!r})"

    def placement_key(self):
        """Hashable key ignoring move clocks (for transposition tables)."""
        return (self.board, self.turn, self.castling, self.ep)

    def piece_at(self, sq: int) -> Optional[Piece]:
        code = self.board[sq]
        return Piece.from_code(code) if code else None

    @property
    def side_to_move(self) -> int:
        return self.turn

    @property
    def castling_rights(self) -> Tuple[bool, bool, bool, bool]:
        c = self.castling
        return (bool(c & WK), bool(c & WQ), bool(c & BK), bool(c & BQ))

    def king_square(self, color: int) -> int:
        return self.kings[0] if color == WHITE else self.kings[1]

    def piece_count(self) -> int:
        return sum(1 for p in self.board if p)

    def in_check(self) -> bool:
        if self._in_check is None:
            self._in_check = attacked(self.board, self.king_square(self.turn), -self.turn)
        return self._in_check

    def legal_moves(self) -> MoveList:
        if self._legal is None:
            self._legal = list(_legal_moves(self, True))
        return self._legal

    def has_legal_move(self) -> bool:
        if self._has_move is None:
            if self._legal is not None:
                self._has_move = bool(self._legal)
            elif not self.in_check() and _unpinned_mover(self):
                self._has_move = True
            else:
                self._has_move = next(_legal_moves(self, False), None) is not None
        return self._has_move

    def is_checkmate(self) -> bool:
        return self.in_check() and not self.has_legal_move()

    def is_stalemate(self) -> bool:
        return not self.in_check() and not self.has_legal_move()

    def push(self, move: Move) -> "Position":
        return apply_move(self, move)

    def push_uci(self, text: str) -> "Position":
        return apply_move(self, Move.from_uci(text))


# --------------------------------------------------------------------------
# FEN / EPD


def _parse_placement(text: str) -> List[int]:
    rows = text.split("/")
    if len(rows) != 8:
        raise FenError(f"placement must have 8 ranks, got {len(rows)}")
    board = [0] * 64
    for i, row in enumerate(rows):
        rank = 7 - i
        f = 0
        for ch in row:
            if ch.isdigit():
                if ch == "0":
                    raise FenError(f"zero empty-run in rank {rank + 1}")
                f += int(ch)
            elif ch.lower() in LETTER_KINDS:
                if f > 7:
                    raise FenError(f"rank {rank + 1} overflows 8 files")
                kind = LETTER_KINDS[ch.lower()]
                board[square(f, rank)] = kind if ch.isupper() else -kind
                f += 1
            else:
                raise FenError(f"illegal piece letter {ch!r}")
        if f != 8:
            raise FenError(f"rank {rank + 1} describes {f} files, expected 8")
    return board


def _validate(pos: Position) -> None:
    b = pos.board
    for color, name in ((WHITE, "white"), (BLACK, "black")):
        n = sum(1 for p in b if p == KING * color)
        if n == 0:
            raise FenError(f"missing {name} king")
        if n > 1:
            raise FenError(f"more than one {name} king")
    for sq in list(range(8)) + list(range(56, 64)):
        if abs(b[sq]) == PAWN:
            raise FenError(f"pawn on back rank at {square_name(sq)}")
    if pos.ep is not None:
        want = 5 if pos.turn == WHITE else 2
        if square_rank(pos.ep) != want:
            raise FenError(f"en passant square {square_name(pos.ep)} on wrong rank")
    if attacked(b, pos.king_square(-pos.turn), pos.turn):
        raise FenError("side not to move is in check")


def _parse_fields(fields: List[str]) -> Position:
    placement, side, castle, ep = fields[:4]
    board = _parse_placement(placement)
    if side not in ("w", "b"):
        raise FenError(f"side to move must be 'w' or 'b', got {side!r}")
    rights = 0
    if castle != "-":
        for ch in castle:
            bit = dict(_CASTLE_CHARS).get(ch)
            if bit is None or rights & bit:
                raise FenError(f"bad castling field {castle!r}")
            rights |= bit
    ep_sq = None
    if ep != "-":
        try:
            ep_sq = parse_square(ep)
        except ValueError:
            raise FenError(f"bad en passant field {ep!r}") from None
    halfmove, fullmove = 0, 1
    if len(fields) == 6:
        try:
            halfmove, fullmove = int(fields[4]), int(fields[5])
        except ValueError:
            raise FenError("move clocks must be integers") from None
        if halfmove < 0 or fullmove < 1:
            raise FenError("move clocks out of range")
    pos = Position(board, WHITE if side == "w" else BLACK, rights, ep_sq, halfmove, fullmove)
    _validate(pos)
    return pos


def parse_fen(text: str) -> Position:
    """Parse a 6-field FEN string, raising ``FenError`` on anything illegal."""
    fields = text.split()
    if len(fields) != 6:
        raise FenError(f"FEN needs 6 fields, got {len(fields)}")
    return _parse_fields(fields)


def to_fen(pos: Position) -> str:
    rows = []
    for rank in range(7, -1, -1):
        row, empty = "", 0
        for f in range(8):
            p = pos.board[square(f, rank)]
            if p == 0:
                empty += 1
                continue
            if empty:
                row += str(empty)
                empty = 0
            row += Piece.from_code(p).symbol
        if empty:
            row += str(empty)
        rows.append(row)
    castle = "".join(ch for ch, bit in _CASTLE_CHARS if pos.castling & bit) or "-"
    ep = square_name(pos.ep) if pos.ep is not None else "-"
    side = "w" if pos.turn == WHITE else "b"
    return f"{'/'.join(rows)} {side} {castle} {ep} {pos.halfmove} {pos.fullmove}"


_EPD_OP = re.compile(r'\s*([A-Za-z][A-Za-z0-9_]*)\s*((?:"[^"]*"|[^;"])*);')


def parse_epd(text: str) -> Tuple[Position, Dict[str, str]]:
    """Parse an EPD record into a position and its opcode map.

    Operand strings lose their surrounding quotes.  ``hmvc``/``fmvn``
    opcodes, when present, set the move clocks.
    """
    fields = text.strip().split(None, 4)
    if len(fields) < 4:
        raise FenError(f"EPD needs 4 position fields, got {len(fields)}")
    rest = fields[4] if len(fields) == 5 else ""
    ops: Dict[str, str] = {}
    pos_ = 0
    rest = rest.strip()
    while pos_ < len(rest):
        m = _EPD_OP.match(rest, pos_)
        if not m:
            raise FenError(f"malformed EPD operation near {rest[pos_:]!r}")
        operand = m.group(2).strip()
        if len(operand) >= 2 and operand[0] == operand[-1] == '"':
            operand = operand[1:-1]
        ops[m.group(1)] = operand
        pos_ = m.end()
        while pos_ < len(rest) and rest[pos_].isspace():
            pos_ += 1
    clocks = [ops.get("hmvc", "0"), ops.get("fmvn", "1")]
    pos = _parse_fields(fields[:4] + clocks)
    return pos, ops


def to_epd(pos: Position, ops: Optional[Dict[str, str]] = None) -> str:
    head = " ".join(to_fen(pos).split()[:4])
    parts = []
    for k, v in (ops or {}).items():
        if k in ("id", "c0") or " " in v:
            v = f'"{v}"'
        parts.append(f"{k} {v};")
    return " ".join([head] + parts)


# --------------------------------------------------------------------------
# move generation


def _make_board(board, turn, m: Move):
    """Board list after ``m`` (no bookkeeping beyond piece placement)."""
    b = list(board)
    frm, to = m.from_sq, m.to_sq
    piece = b[frm]
    b[frm] = 0
    kind = piece * turn
    if kind == PAWN and to == _ep_target(board, turn, frm, to):
        b[to - 8 * turn] = 0
    elif kind == KING and abs(to - frm) == 2:
        if to > frm:
            b[frm + 1], b[frm + 3] = b[frm + 3], 0
        else:
            b[frm - 1], b[frm - 4] = b[frm - 4], 0
    b[to] = m.promotion * turn if m.promotion else piece
    return b


def _ep_target(board, turn, frm, to):
    # a diagonal pawn move onto an empty square is en passant
    if (to - frm) % 8 != 0 and board[to] == 0:
        return to
    return -1


def _legal_moves(pos: Position, with_checks: bool) -> Iterator[Move]:
    b = pos.board
    us = pos.turn
    them = -us
    k = pos.king_square(us)

    checkers = attackers(b, k, them)
    n_check = len(checkers)
    block = None
    if n_check == 1:
        c = checkers[0]
        block = set(BETWEEN[k][c])
        block.add(c)

    pins: Dict[int, frozenset] = {}
    for d, ray in enumerate(RAYS[k]):
        slider = 4 * them if d < 4 else 3 * them
        own = -1
        for i, s in enumerate(ray):
            p = b[s]
            if not p:
                continue
            if p * us > 0:
                if own >= 0:
                    break
                own = s
            else:
                if own >= 0 and (p == slider or p == 5 * them):
                    pins[own] = frozenset(ray[:i + 1])
                break

    if with_checks:
        ek = pos.king_square(them)
        discover: Dict[int, int] = {}
        for d, ray in enumerate(RAYS[ek]):
            slider = 4 * us if d < 4 else 3 * us
            own = -1
            for s in ray:
                p = b[s]
                if not p:
                    continue
                if p * us > 0 and own < 0:
                    own = s
                    continue
                if own >= 0 and (p == slider or p == 5 * us):
                    discover[own] = d
                break
        pawn_check = frozenset(PAWN_ATTACKS[them][ek])
        knight_check = KNIGHT_SETS[ek]
        dir_ek = DIRECTION
        between = BETWEEN

        def check_flag(frm, to, kind):
            d = discover.get(frm)
            if d is not None and dir_ek[ek][to] != d:
                return True
            if kind == KNIGHT:
                return to in knight_check
            if kind == PAWN:
                return to in pawn_check
            if kind == KING:
                return False
            d = dir_ek[to][ek]
            if d < 0 or (kind == ROOK and d >= 4) or (kind == BISHOP and d < 4):
                return False
            for s in between[to][ek]:
                if b[s] and s != frm:
                    return False
            return True

        def full_check(m):
            nb = _make_board(b, us, m)
            return attacked(nb, ek, us)
    else:
        check_flag = None

    def emit(frm, to, promo, cap, kind):
        if check_flag is None:
            return Move(frm, to, promo, cap, False)
        return Move(frm, to, promo, cap, check_flag(frm, to, promo or kind))

    # king moves
    nb = list(b)
    nb[k] = 0
    for t in KING_TARGETS[k]:
        p = b[t]
        if p * us > 0:
            continue
        if attacked(nb, t, them):
            continue
        yield emit(k, t, None, abs(p) if p else None, KING)

    if n_check > 1:
        return

    # castling
    if n_check == 0 and pos.castling:
        if us == WHITE:
            options = ((WK, 4, 7, (5, 6), (5, 6)), (WQ, 4, 0, (3, 2, 1), (3, 2)))
        else:
            options = ((BK, 60, 63, (61, 62), (61, 62)), (BQ, 60, 56, (59, 58, 57), (59, 58)))
        for bit, ksq, rsq, empty, safe in options:
            if not pos.castling & bit or k != ksq or b[rsq] != ROOK * us:
                continue
            if any(b[s] for s in empty):
                continue
            if any(attacked(b, s, them) for s in safe):
                continue
            m = Move(ksq, safe[1], None, None, False)
            if check_flag is not None:
                m = m._replace(gives_check=full_check(m))
            yield m

    forward = 8 * us
    start_rank = 1 if us == WHITE else 6
    promo_rank = 7 if us == WHITE else 0
    for frm in range(64):
        piece = b[frm]
        if piece * us <= 0:
            continue
        kind = piece * us
        if kind == KING:
            continue
        pin = pins.get(frm)
        if kind == PAWN:
            targets = []
            one = frm + forward
            if b[one] == 0:
                targets.append((one, None))
                if (frm >> 3) == start_rank and b[one + forward] == 0:
                    targets.append((one + forward, None))
            for t in PAWN_ATTACKS[us][frm]:
                p = b[t]
                if p * them > 0:
                    targets.append((t, abs(p)))
                elif t == pos.ep and p == 0:
                    targets.append((t, -1))
            for t, cap in targets:
                if cap == -1:
                    m = Move(frm, t, None, PAWN, False)
                    nbd = _make_board(b, us, m)
                    if attacked(nbd, k, them):
                        continue
                    if check_flag is not None:
                        m = m._replace(gives_check=attacked(nbd, pos.king_square(them), us))
                    yield m
                    continue
                if pin is not None and t not in pin:
                    continue
                if block is not None and t not in block:
                    continue
                if (t >> 3) == promo_rank:
                    for promo in (QUEEN, ROOK, BISHOP, KNIGHT):
                        yield emit(frm, t, promo, cap, PAWN)
                else:
                    yield emit(frm, t, None, cap, PAWN)
            continue
        if kind == KNIGHT:
            if pin is not None:
                continue
            for t in KNIGHT_TARGETS[frm]:
                p = b[t]
                if p * us > 0:
                    continue
                if block is not None and t not in block:
                    continue
                yield emit(frm, t, None, abs(p) if p else None, KNIGHT)
            continue
        rays = ORTH_RAYS[frm] if kind == ROOK else DIAG_RAYS[frm] if kind == BISHOP else RAYS[frm]
        for ray in rays:
            for t in ray:
                p = b[t]
                if p * us > 0:
                    break
                if (pin is None or t in pin) and (block is None or t in block):
                    yield emit(frm, t, None, abs(p) if p else None, kind)
                if p:
                    break


def _unpinned_mover(pos: Position) -> bool:
    """Cheap sufficient test for a legal move when not in check.

    A piece off every line through its own king cannot be pinned, so any
    pseudo-legal move it has is legal.  En passant is ignored.
    """
    b = pos.board
    us = pos.turn
    k = pos.king_square(us)
    line = DIRECTION[k]
    for frm in range(64):
        piece = b[frm]
        if piece * us <= 0 or line[frm] >= 0:
            continue
        kind = piece * us
        if kind == PAWN:
            one = frm + 8 * us
            if b[one] == 0:
                return True
            for t in PAWN_ATTACKS[us][frm]:
                if b[t] * us < 0:
                    return True
        elif kind == KNIGHT:
            for t in KNIGHT_TARGETS[frm]:
                if b[t] * us <= 0:
                    return True
        elif kind != KING:
            rays = ORTH_RAYS[frm] if kind == ROOK else DIAG_RAYS[frm] if kind == BISHOP else RAYS[frm]
            for ray in rays:
                if ray and b[ray[0]] * us <= 0:
                    return True
    return False


def generate_legal_moves(pos: Position) -> MoveList:
    """All legal moves, each annotated with capture victim and check flag."""
    return list(pos.legal_moves())


def is_in_check(pos: Position, color: int) -> bool:
    return attacked(pos.board, pos.king_square(color), -color)


def make_move(pos: Position, m: Move) -> Position:
    """Successor position for a move known to be legal (no validation)."""
    b = list(pos.board)
    us = pos.turn
    frm, to = m.from_sq, m.to_sq
    piece = b[frm]
    kind = piece * us
    captured = b[to]
    material = pos.material - _CODE_VALUE[captured]
    ep = None
    kw, kb = pos.kings
    b[frm] = 0
    if kind == PAWN:
        if to == pos.ep and captured == 0 and (to - frm) % 8:
            b[to - 8 * us] = 0
            material += MATERIAL[PAWN] * us
        elif abs(to - frm) == 16:
            ep = frm + 8 * us
        if m.promotion:
            piece = m.promotion * us
            material += (MATERIAL[m.promotion] - MATERIAL[PAWN]) * us
    elif kind == KING:
        if us == WHITE:
            kw = to
        else:
            kb = to
        if to - frm == 2:
            b[frm + 1], b[frm + 3] = b[frm + 3], 0
        elif frm - to == 2:
            b[frm - 1], b[frm - 4] = b[frm - 4], 0
    b[to] = piece
    castling = pos.castling & _CASTLE_MASK[frm] & _CASTLE_MASK[to]
    halfmove = 0 if kind == PAWN or captured else pos.halfmove + 1
    fullmove = pos.fullmove + (1 if us == BLACK else 0)
    return Position(b, -us, castling, ep, halfmove, fullmove,
                    _kings=(kw, kb), _material=material)


def find_move(pos: Position, m: Move) -> Move:
    """The generated legal move matching ``m`` on (from, to, promotion)."""
    key = m.key()
    for lm in pos.legal_moves():
        if lm.key() == key:
            return lm
    raise IllegalMoveError(f"{m.uci()} is not legal in {to_fen(pos)}")


def apply_move(pos: Position, m: Move) -> Position:
    """Successor position; raises ``IllegalMoveError`` if ``m`` is illegal."""
    return make_move(pos, find_move(pos, m))


def perft(pos: Position, depth: int) -> int:
    if depth == 0:
        return 1
    moves = list(_legal_moves(pos, False))
    if depth == 1:
        return len(moves)
    return sum(perft(make_move(pos, m), depth - 1) for m in moves)


def start_position() -> Position:
    return parse_fen(START_FEN)


# --------------------------------------------------------------------------
# notation


def san(pos: Position, m: Move) -> str:
    """Standard algebraic notation for a legal move."""
    m = find_move(pos, m)
    kind = abs(pos.board[m.from_sq])
    if kind == KING and abs(m.to_sq - m.from_sq) == 2:
        text = "O-O" if m.to_sq > m.from_sq else "O-O-O"
    else:
        text = ""
        if kind == PAWN:
            if m.is_capture:
                text = FILE_NAMES[square_file(m.from_sq)]
        else:
            text = KIND_LETTERS[kind].upper()
            rivals = [o for o in pos.legal_moves()
                      if o.to_sq == m.to_sq and o.from_sq != m.from_sq
                      and abs(pos.board[o.from_sq]) == kind]
            if rivals:
                same_file = any(square_file(o.from_sq) == square_file(m.from_sq) for o in rivals)
                same_rank = any(square_rank(o.from_sq) == square_rank(m.from_sq) for o in rivals)
                if not same_file:
                    text += FILE_NAMES[square_file(m.from_sq)]
                elif not same_rank:
                    text += str(square_rank(m.from_sq) + 1)
                else:
                    text += square_name(m.from_sq)
        if m.is_capture:
            text += "x"
        text += square_name(m.to_sq)
        if m.promotion:
            text += "=" + KIND_LETTERS[m.promotion].upper()
    if m.gives_check:
        child = make_move(pos, m)
        text += "#" if not child.has_legal_move() else "+"
    return text


_DESC_FILES = ("QR", "QN", "QB", "Q", "K", "KB", "KN", "KR")


def descriptive(pos: Position, m: Move) -> str:
    """Old descriptive notation, e.g. ``Q-QN6ch`` or ``PxQ``."""
    m = find_move(pos, m)
    kind = abs(pos.board[m.from_sq])
    letter = KIND_LETTERS[kind].upper()
    if kind == KING and abs(m.to_sq - m.from_sq) == 2:
        text = "O-O" if m.to_sq > m.from_sq else "O-O-O"
    elif m.is_capture:
        text = f"{letter}x{KIND_LETTERS[m.captured].upper()}"
    else:
        rank = square_rank(m.to_sq) + 1
        if pos.turn == BLACK:
            rank = 9 - rank
        text = f"{letter}-{_DESC_FILES[square_file(m.to_sq)]}{rank}"
    if m.promotion:
        text += f"({KIND_LETTERS[m.promotion].upper()})"
    if m.gives_check:
        child = make_move(pos, m)
        text += " mate" if not child.has_legal_move() else "ch"
    return text

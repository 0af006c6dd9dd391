"""Information-theoretic quantities for move selection.

Entropies are in bits.  The ``EntropyModel`` holds per-piece entropy rates
(log2 of a piece's maximum mobility) and per-category entropy reductions;
the fractional ply charged to a move is one minus the ratio of its
category's reduction to the best category's reduction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Sequence

import numpy as np

from .board import (BISHOP, KING, KNIGHT, PAWN, QUEEN, ROOK, Move, Position)

TOL = 1e-9


class DistributionError(ValueError):
    pass


def _as_distribution(p, ndim: int) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.ndim != ndim or arr.size == 0:
        raise DistributionError(f"expected a non-empty {ndim}-d array of probabilities")
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1 + TOL):
        raise DistributionError("probabilities must lie in [0, 1]")
    if abs(arr.sum() - 1.0) > TOL:
        raise DistributionError(f"probabilities sum to {arr.sum()!r}, not 1")
    return arr


def entropy(p: Sequence[float]) -> float:
    """Shannon entropy in bits; zero-probability outcomes contribute nothing."""
    arr = _as_distribution(p, 1)
    nz = arr[arr > 0]
    return float(max(0.0, -np.sum(nz * np.log2(nz))))


def joint_entropy(joint) -> float:
    arr = _as_distribution(joint, 2)
    nz = arr[arr > 0]
    return float(max(0.0, -np.sum(nz * np.log2(nz))))


def mutual_information(joint) -> float:
    """I(X;Y) in bits for a joint probability matrix ``joint[x, y]``."""
    arr = _as_distribution(joint, 2)
    px = arr.sum(axis=1, keepdims=True)
    py = arr.sum(axis=0, keepdims=True)
    mask = arr > 0
    ratio = arr[mask] / (px @ py)[mask]
    return float(max(0.0, np.sum(arr[mask] * np.log2(ratio))))


def information_gain(h_before: float, h_after: float) -> float:
    """Uncertainty removed by a move; negative when information is lost."""
    if h_before < 0 or h_after < 0:
        raise ValueError("entropies must be non-negative")
    return h_before - h_after


def heuristic_efficiency(gain: float, nodes: int) -> float:
    """Information gained per node searched."""
    if nodes < 1:
        raise ValueError("heuristic efficiency needs at least one node")
    return gain / nodes


# --------------------------------------------------------------------------
# move categories and the entropy model


class MoveCategory(enum.Enum):
    CHECK = "check"
    CAPTURE_QUEEN = "capture_queen"
    CAPTURE_ROOK = "capture_rook"
    CAPTURE_BISHOP = "capture_bishop"
    CAPTURE_KNIGHT = "capture_knight"
    CAPTURE_PAWN = "capture_pawn"
    PROMOTION = "promotion"
    QUIET = "quiet"


_CAPTURE_CATEGORY = {
    QUEEN: MoveCategory.CAPTURE_QUEEN,
    ROOK: MoveCategory.CAPTURE_ROOK,
    BISHOP: MoveCategory.CAPTURE_BISHOP,
    KNIGHT: MoveCategory.CAPTURE_KNIGHT,
    PAWN: MoveCategory.CAPTURE_PAWN,
}

DEFAULT_CATEGORY_REDUCTION: Dict[MoveCategory, float] = {
    MoveCategory.CHECK: math.log2(30),
    MoveCategory.CAPTURE_QUEEN: math.log2(28),
    MoveCategory.CAPTURE_ROOK: math.log2(14),
    MoveCategory.CAPTURE_BISHOP: math.log2(13),
    MoveCategory.CAPTURE_KNIGHT: math.log2(8),
    MoveCategory.CAPTURE_PAWN: math.log2(4),
    MoveCategory.PROMOTION: math.log2(28),
    MoveCategory.QUIET: math.log2(2),
}

# maximum-mobility entropy rates per piece kind
DEFAULT_PIECE_RATE: Dict[int, float] = {
    PAWN: math.log2(4),
    KNIGHT: math.log2(8),
    BISHOP: math.log2(13),
    ROOK: math.log2(14),
    QUEEN: math.log2(28),
    KING: math.log2(8),
}

_PIECE_KEYS = {"pawn": PAWN, "knight": KNIGHT, "bishop": BISHOP,
               "rook": ROOK, "queen": QUEEN, "king": KING}


def classify_move(pos: Position, move: Move) -> MoveCategory:
    """Check beats capture (by victim), capture beats promotion."""
    if move.gives_check:
        return MoveCategory.CHECK
    if move.captured is not None and move.captured in _CAPTURE_CATEGORY:
        return _CAPTURE_CATEGORY[move.captured]
    if move.promotion:
        return MoveCategory.PROMOTION
    return MoveCategory.QUIET


@dataclass(frozen=True, eq=False)
class EntropyModel:
    piece_rate: Mapping[int, float] = field(default_factory=lambda: dict(DEFAULT_PIECE_RATE))
    category_reduction: Mapping[MoveCategory, float] = field(
        default_factory=lambda: dict(DEFAULT_CATEGORY_REDUCTION))

    def __post_init__(self):
        rates = dict(DEFAULT_PIECE_RATE)
        rates.update(self.piece_rate)
        cats = dict(DEFAULT_CATEGORY_REDUCTION)
        cats.update(self.category_reduction)
        for name, value in list(rates.items()) + list(cats.items()):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"entropy value for {name} must be finite and >= 0")
        if max(cats.values()) <= 0:
            raise ValueError("at least one category must reduce entropy")
        object.__setattr__(self, "piece_rate", MappingProxyType(rates))
        object.__setattr__(self, "category_reduction", MappingProxyType(cats))

    @property
    def best_gain(self) -> float:
        return max(self.category_reduction.values())

    @classmethod
    def from_text(cls, text: str) -> "EntropyModel":
        """Parse ``name=bits`` lines; names are categories or piece kinds.

        Values may be numbers or ``log2(x)`` expressions.  ``#`` starts a
        comment.
        """
        rates, cats = {}, {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            bits = _parse_bits(value, lineno)
            if key in _PIECE_KEYS:
                rates[_PIECE_KEYS[key]] = bits
            else:
                try:
                    cats[MoveCategory(key)] = bits
                except ValueError:
                    raise ValueError(f"line {lineno}: unknown key {key!r}") from None
        return cls(rates, cats)

    def to_text(self) -> str:
        names = {v: k for k, v in _PIECE_KEYS.items()}
        lines = [f"{c.value}={v!r}" for c, v in self.category_reduction.items()]
        lines += [f"{names[k]}={v!r}" for k, v in sorted(self.piece_rate.items())]
        return "\n".join(lines) + "\n"


def _parse_bits(value: str, lineno: int) -> float:
    v = value.replace(" ", "")
    try:
        if v.startswith("log2(") and v.endswith(")"):
            return math.log2(float(v[5:-1]))
        return float(v)
    except ValueError:
        raise ValueError(f"line {lineno}: bad value {value!r}") from None


DEFAULT_MODEL = EntropyModel()


def category_probability(model: EntropyModel, category: MoveCategory) -> float:
    """Probability that a move of this category is explored."""
    p = model.category_reduction[category] / model.best_gain
    return min(1.0, max(0.0, p))


def fractional_ply(model: EntropyModel, category: MoveCategory) -> float:
    """Fraction of a full ply charged to a move of this category."""
    return 1.0 - category_probability(model, category)


def trajectory_probability(de_i: float, de_best: float, cost_i: float, cost_best: float) -> float:
    if de_best <= 0 or cost_i <= 0 or cost_best <= 0:
        raise ValueError("best entropy reduction and both costs must be positive")
    p = (de_i / de_best) * (cost_best / cost_i)
    return min(1.0, max(0.0, p))


def position_entropy(model: EntropyModel, pos: Position) -> float:
    """Sum of the entropy rates of every piece on the board."""
    rates = model.piece_rate
    return float(sum(rates[abs(p)] for p in pos.board if p))


# --------------------------------------------------------------------------
# prior-work comparators


def winands_fractional_ply(p_c: float, branching: int) -> float:
    """Fractional ply from a transition probability, one ply at p = 1/c."""
    if not 0 < p_c <= 1:
        raise ValueError("transition probability must lie in (0, 1]")
    if branching < 2:
        raise ValueError("branching factor must be at least 2")
    return math.log(p_c) / math.log(1.0 / branching) + 0.0


def levy_interestingness(path_probs: Iterable[float]) -> float:
    total = 0.0
    for p in path_probs:
        if not 0 < p <= 1:
            raise ValueError("path probabilities must lie in (0, 1]")
        total += math.log(p)
    return total

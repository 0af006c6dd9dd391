"""Partial-depth alpha-beta chess search with entropy-based move weighting."""

from .board import (FenError, IllegalMoveError, Move, Position, apply_move, parse_epd,
                    parse_fen, perft, start_position, to_epd, to_fen)
from .entropy import DEFAULT_MODEL, EntropyModel, MoveCategory, fractional_ply
from .search import SchedulerKind, SearchParams, SearchResult, ers_search, evaluate

__version__ = "0.1.0"

__all__ = [
    "FenError", "IllegalMoveError", "Move", "Position", "apply_move", "parse_epd",
    "parse_fen", "perft", "start_position", "to_epd", "to_fen", "DEFAULT_MODEL",
    "EntropyModel", "MoveCategory", "fractional_ply", "SchedulerKind", "SearchParams",
    "SearchResult", "ers_search", "evaluate",
]

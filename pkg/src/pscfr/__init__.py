"""Vanilla and public-state CFR over factored-observation stochastic games."""

from .cfr import ALGORITHMS, CFRSolver, cfr_solve
from .evaluation import best_response_value, expected_values, exploitability, strategy_distance
from .fosg import Game, GameError, UnsupportedGameError, build_public_tree, check_sbg, enumerate_counts
from .games import ZOO, make_game
from .transform import sb_transform

__all__ = [
    "ALGORITHMS", "CFRSolver", "Game", "GameError", "UnsupportedGameError", "ZOO", "best_response_value",
    "build_public_tree", "cfr_solve", "check_sbg", "enumerate_counts", "expected_values", "exploitability",
    "make_game", "sb_transform", "strategy_distance",
]

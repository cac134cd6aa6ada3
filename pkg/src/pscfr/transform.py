"""Sequential-Bayesian form of a one-round two-player matrix game.

Player 1 is privately dealt a uniformly random code book (a bijection from
their actions onto code words) and announces the encoded action publicly;
player 2 then answers publicly and the payoff is computed from the decoded
action.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .fosg import NOOP, START, Game, UnsupportedGameError
from .games.matrix import MatrixGame

CODE_WORDS = "XYZUVWABCDEFGHIJKLMNOPQR"


class SbFormGame(Game):
    num_players = 2

    def __init__(self, base: MatrixGame):
        self.base = base
        rows = base.rows
        if len(rows) > len(CODE_WORDS):
            raise UnsupportedGameError("too many row actions for the code alphabet")
        self.codes = tuple(CODE_WORDS[: len(rows)])
        # code_books[k][j] is the code word for row action j
        self.code_books = tuple(itertools.permutations(self.codes))
        self.name = f"sb({base.name})"

    def book_token(self, book) -> str:
        return ",".join(f"{r}{c}" for r, c in zip(self.base.rows, book))

    def decode(self, book, code: str) -> str:
        return self.base.rows[book.index(code)]

    def initial_world(self):
        return None

    def is_terminal(self, w):
        return w is not None and len(w) == 3

    def active_players(self, w):
        if w is None or self.is_terminal(w):
            return ()
        return (0,) if len(w) == 1 else (1,)

    def legal_actions(self, w, player):
        if player not in self.active_players(w):
            return (NOOP,)
        return self.codes if player == 0 else self.base.cols

    def transition(self, w, joint):
        if w is None:
            p = 1.0 / len(self.code_books)
            return [((book,), p) for book in self.code_books]
        if len(w) == 1:
            return [((w[0], joint[0]), 1.0)]
        if len(w) == 2:
            return [((w[0], w[1], joint[1]), 1.0)]
        return []

    def observe(self, w, joint, nxt):
        if w is None:
            return (self.book_token(nxt[0]), ""), START
        return ("", ""), nxt[-1]

    def reward(self, w, joint, nxt):
        if not self.is_terminal(nxt):
            return (0.0, 0.0)
        u = self.base.utility(self.decode(nxt[0], nxt[1]), nxt[2])
        return (u, -u)

    def describe(self):
        return {
            "name": self.name,
            "kind": "sb_form",
            "base": self.base.describe(),
            "codes": list(self.codes),
            "code_books": [self.book_token(b) for b in self.code_books],
            "code_book_probability": 1.0 / math.factorial(len(self.codes)),
            "stages": ["chance deals player 1 a code book privately",
                       "player 1 announces a code word publicly",
                       "player 2 announces a column action publicly"],
        }


def sb_transform(game) -> SbFormGame:
    """Rewrite a two-player matrix game (or payoff matrix) in SB form."""
    if isinstance(game, MatrixGame):
        if game.num_players != 2:
            raise UnsupportedGameError("only two-player matrix games are supported")
        return SbFormGame(game)
    payoff = np.asarray(game, dtype=float)
    if payoff.ndim != 2:
        raise UnsupportedGameError(f"expected a two-player payoff matrix, got {payoff.ndim} dimensions")
    m, n = payoff.shape
    rows = tuple(f"A{k}" for k in range(m))
    cols = tuple(f"b{k}" for k in range(n))
    return SbFormGame(MatrixGame(payoff, rows, cols, name=f"matrix{m}x{n}"))

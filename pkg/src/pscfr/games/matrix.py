"""Two-player matrix games as FOSGs, simultaneous or with a hidden first move."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..fosg import NOOP, START, Game, check_token

RPS_PAYOFF = ((0, -1, 1), (1, 0, -1), (-1, 1, 0))
RPS_ROWS = ("R", "P", "S")
RPS_COLS = ("r", "p", "s")

# player 1 hides the coin and wins on a mismatch
MP_PAYOFF = ((-1, 1), (1, -1))
MP_ROWS = ("H", "T")
MP_COLS = ("h", "t")


class MatrixGame(Game):
    """One simultaneous round; the joint action is announced publicly.

    ``payoff[r][c]`` is player 1's utility; player 2 receives its negation.
    """

    num_players = 2

    def __init__(self, payoff, rows: Sequence[str], cols: Sequence[str], name: str = "matrix"):
        self.payoff = np.asarray(payoff, dtype=float)
        if self.payoff.ndim != 2 or self.payoff.shape != (len(rows), len(cols)):
            raise ValueError("payoff must be a rows x cols matrix")
        self.rows = tuple(check_token(r) for r in rows)
        self.cols = tuple(check_token(c) for c in cols)
        self.name = name

    def initial_world(self):
        return ("move",)

    def is_terminal(self, w):
        return w[0] == "end"

    def active_players(self, w):
        return (0, 1) if w[0] == "move" else ()

    def legal_actions(self, w, player):
        if w[0] != "move":
            return (NOOP,)
        return self.rows if player == 0 else self.cols

    def transition(self, w, joint):
        if w[0] != "move":
            return []
        return [(("end", joint[0], joint[1]), 1.0)]

    def observe(self, w, joint, nxt):
        return ("", ""), joint[0] + joint[1]

    def utility(self, row: str, col: str) -> float:
        return float(self.payoff[self.rows.index(row), self.cols.index(col)])

    def reward(self, w, joint, nxt):
        u = self.utility(nxt[1], nxt[2])
        return (u, -u)

    def describe(self):
        return {"name": self.name, "rows": list(self.rows), "cols": list(self.cols), "payoff": self.payoff.tolist()}


class HiddenMoveMatrixGame(MatrixGame):
    """Player 1 moves first without player 2 seeing the move, then player 2 moves."""

    def initial_world(self):
        return ("p1",)

    def active_players(self, w):
        return {"p1": (0,), "p2": (1,)}.get(w[0], ())

    def legal_actions(self, w, player):
        if w[0] == "p1" and player == 0:
            return self.rows
        if w[0] == "p2" and player == 1:
            return self.cols
        return (NOOP,)

    def transition(self, w, joint):
        if w[0] == "p1":
            return [(("p2", joint[0]), 1.0)]
        if w[0] == "p2":
            return [(("end", w[1], joint[1]), 1.0)]
        return []

    def observe(self, w, joint, nxt):
        if w[0] == "p1":
            return ("", ""), START
        return ("", ""), joint[1]

    def reward(self, w, joint, nxt):
        if nxt[0] != "end":
            return (0.0, 0.0)
        return super().reward(w, joint, nxt)


def rps_nfg() -> MatrixGame:
    return MatrixGame(RPS_PAYOFF, RPS_ROWS, RPS_COLS, name="rps_nfg")


def rps_efg() -> HiddenMoveMatrixGame:
    return HiddenMoveMatrixGame(RPS_PAYOFF, RPS_ROWS, RPS_COLS, name="rps_efg")


def matching_pennies() -> MatrixGame:
    return MatrixGame(MP_PAYOFF, MP_ROWS, MP_COLS, name="mp_nfg")


def mp_seq() -> HiddenMoveMatrixGame:
    return HiddenMoveMatrixGame(MP_PAYOFF, MP_ROWS, MP_COLS, name="mp_seq")

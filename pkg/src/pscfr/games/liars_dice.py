"""Two-player liar's dice without wild faces."""

from __future__ import annotations

import itertools

from ..fosg import NOOP, START, Game

CALL = "L"


class LiarsDice(Game):
    """World: ``(dice1, dice2, bids)`` with ``bids`` a tuple of bid indices.

    Bid ``b`` claims at least ``b // faces + 1`` dice showing ``b % faces + 1``
    across both cups.  Player 1 must open with a bid; afterwards each turn is
    a strictly higher bid or a call.
    """

    num_players = 2

    def __init__(self, dice: int = 1, faces: int = 4):
        if dice < 1 or faces < 2:
            raise ValueError("liar's dice needs dice >= 1 and faces >= 2")
        self.dice = dice
        self.faces = faces
        self.num_bids = 2 * dice * faces
        self.name = f"liars_dice:d={dice},f={faces}"

    def bid_token(self, b: int) -> str:
        return f"{b // self.faces + 1}x{b % self.faces + 1}"

    def initial_world(self):
        return None

    def is_terminal(self, w):
        return w is not None and len(w) == 4

    def active_players(self, w):
        if w is None or self.is_terminal(w):
            return ()
        return (len(w[2]) % 2,)

    def legal_actions(self, w, player):
        if player not in self.active_players(w):
            return (NOOP,)
        bids = w[2]
        start = bids[-1] + 1 if bids else 0
        acts = tuple(self.bid_token(b) for b in range(start, self.num_bids))
        return acts + (CALL,) if bids else acts

    def transition(self, w, joint):
        if w is None:
            rolls = list(itertools.product(range(1, self.faces + 1), repeat=2 * self.dice))
            p = 1.0 / len(rolls)
            return [((tuple(sorted(r[: self.dice])), tuple(sorted(r[self.dice :])), ()), p) for r in rolls]
        if self.is_terminal(w):
            return []
        action = joint[len(w[2]) % 2]
        if action == CALL:
            return [((w[0], w[1], w[2], len(w[2]) % 2), 1.0)]
        q, f = action.split("x")
        b = (int(q) - 1) * self.faces + int(f) - 1
        return [((w[0], w[1], w[2] + (b,)), 1.0)]

    def observe(self, w, joint, nxt):
        if w is None:
            return ("".join(map(str, nxt[0])), "".join(map(str, nxt[1]))), START
        return ("", ""), joint[len(w[2]) % 2]

    def reward(self, w, joint, nxt):
        if not self.is_terminal(nxt):
            return (0.0, 0.0)
        caller = nxt[3]
        b = nxt[2][-1]
        quantity, face = b // self.faces + 1, b % self.faces + 1
        count = sum(d == face for d in nxt[0] + nxt[1])
        caller_wins = count < quantity
        u = 1.0 if caller_wins == (caller == 0) else -1.0
        return (u, -u)

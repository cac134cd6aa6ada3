"""Kuhn poker: three cards, one ante, one bet."""

from __future__ import annotations

import itertools

from ..fosg import NOOP, START, Game

CARDS = ("J", "Q", "K")
_TERMINAL = {"pp", "bp", "bb", "pbp", "pbb"}


class KuhnPoker(Game):
    num_players = 2
    name = "kuhn"

    def initial_world(self):
        return None

    def active_players(self, w):
        if w is None or w[2] in _TERMINAL:
            return ()
        return (len(w[2]) % 2,)

    def legal_actions(self, w, player):
        if player in self.active_players(w):
            return ("p", "b")
        return (NOOP,)

    def is_terminal(self, w):
        return w is not None and w[2] in _TERMINAL

    def transition(self, w, joint):
        if w is None:
            deals = list(itertools.permutations(CARDS, 2))
            return [((a, b, ""), 1.0 / len(deals)) for a, b in deals]
        if self.is_terminal(w):
            return []
        action = joint[len(w[2]) % 2]
        return [((w[0], w[1], w[2] + action), 1.0)]

    def observe(self, w, joint, nxt):
        if w is None:
            return (nxt[0], nxt[1]), START
        return ("", ""), nxt[2][-1]

    def reward(self, w, joint, nxt):
        seq = nxt[2]
        if seq not in _TERMINAL:
            return (0.0, 0.0)
        if seq == "bp":
            u = 1.0
        elif seq == "pbp":
            u = -1.0
        else:
            stake = 2.0 if seq.endswith("bb") else 1.0
            u = stake if CARDS.index(nxt[0]) > CARDS.index(nxt[1]) else -stake
        return (u, -u)

"""Leduc hold'em: six cards, two betting rounds, one public board card."""

from __future__ import annotations

import itertools

from ..fosg import NOOP, START, Game

DECK = ("Js", "Jh", "Qs", "Qh", "Ks", "Kh")
RANK_ORDER = "JQK"
RAISE_SIZES = (2, 4)
MAX_RAISES = 2
ANTE = 1


def _replay(rounds):
    """Return ``(contrib, folded, round_over, to_act, raises)`` for the last round."""
    contrib = [ANTE, ANTE]
    folded = None
    round_over = False
    to_act = 0
    raises = 0
    for r, seq in enumerate(rounds):
        to_act, raises, round_over = 0, 0, False
        for k, a in enumerate(seq):
            me, opp = to_act, 1 - to_act
            if a == "f":
                folded = me
            elif a == "c":
                facing = contrib[opp] > contrib[me]
                contrib[me] = contrib[opp]
                # a call of a raise, or the second of two checks
                round_over = facing or k >= 1
            else:
                contrib[me] = contrib[opp] + RAISE_SIZES[r]
                raises += 1
                round_over = False
            to_act = opp
    return contrib, folded, round_over, to_act, raises


class LeducPoker(Game):
    """World: ``(card1, card2, board, (round1 actions, round2 actions))``."""

    num_players = 2
    name = "leduc"

    def initial_world(self):
        return None

    def is_terminal(self, w):
        if w is None:
            return False
        _, folded, over, _, _ = _replay(w[3])
        return folded is not None or (len(w[3]) == 2 and over)

    def active_players(self, w):
        if w is None or self.is_terminal(w):
            return ()
        return (_replay(w[3])[3],)

    def legal_actions(self, w, player):
        if player not in self.active_players(w):
            return (NOOP,)
        contrib, _, _, to_act, raises = _replay(w[3])
        acts = []
        if contrib[1 - to_act] > contrib[to_act]:
            acts.append("f")
        acts.append("c")
        if raises < MAX_RAISES:
            acts.append("r")
        return tuple(acts)

    def transition(self, w, joint):
        if w is None:
            deals = list(itertools.permutations(DECK, 2))
            return [((a, b, None, ("",)), 1.0 / len(deals)) for a, b in deals]
        if self.is_terminal(w):
            return []
        player = _replay(w[3])[3]
        rounds = w[3][:-1] + (w[3][-1] + joint[player],)
        _, folded, over, _, _ = _replay(rounds)
        if len(rounds) == 1 and over and folded is None:
            rest = [c for c in DECK if c not in (w[0], w[1])]
            return [((w[0], w[1], b, rounds + ("",)), 1.0 / len(rest)) for b in rest]
        return [((w[0], w[1], w[2], rounds), 1.0)]

    def observe(self, w, joint, nxt):
        if w is None:
            return (nxt[0][0], nxt[1][0]), START
        player = _replay(w[3])[3]
        action = joint[player]
        if w[2] is None and nxt[2] is not None:
            return ("", ""), action + nxt[2][0]
        return ("", ""), action

    def reward(self, w, joint, nxt):
        if nxt is None or not self.is_terminal(nxt):
            return (0.0, 0.0)
        contrib, folded, _, _, _ = _replay(nxt[3])
        if folded is not None:
            u = -contrib[folded] if folded == 0 else contrib[folded]
            return (float(u), float(-u))
        s1, s2 = _strength(nxt[0], nxt[2]), _strength(nxt[1], nxt[2])
        u = 0 if s1 == s2 else (contrib[1] if s1 > s2 else -contrib[0])
        return (float(u), float(-u))


def _strength(card, board):
    pair = card[0] == board[0]
    return (pair, RANK_ORDER.index(card[0]))

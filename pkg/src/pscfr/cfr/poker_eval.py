"""Linear-time terminal evaluation for river public states.

For a fold the value of a hand is the stake times the opponent reach that
does not share a card with it.  For a showdown it is the stake times the
reach of weaker opponent hands minus the reach of stronger ones, again
without card-sharing hands.  Both are computed from a single sweep over the
opponent hands sorted by rank plus a per-card pass that removes blocked
mass by inclusion-exclusion.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from ..fosg import PublicState, UnsupportedGameError
from ..games.cards import card_index
from ..games.river import RiverGame


class LinearTerminalPlan:
    """Precomputed indices for evaluating one player's values at a terminal.

    ``scale`` is the signed payoff per unit of opponent reach: for a fold it
    is ``+stake * chance`` for the winner and ``-stake * chance`` for the
    folder, for a showdown it is ``stake * chance``.
    """

    def __init__(self, kind: str, own_hands: Sequence[Tuple[str, ...]], own_ranks: Sequence[int],
                 opp_hands: Sequence[Tuple[str, ...]], opp_ranks: Sequence[int], scale: float):
        if kind not in ("fold", "showdown"):
            raise ValueError(f"unknown terminal kind {kind!r}")
        self.kind = kind
        self.scale = float(scale)
        self.n_own = len(own_hands)
        self.n_opp = len(opp_hands)
        k = len(own_hands[0]) if own_hands else 1
        self.hand_size = k
        own_cards = np.array([[card_index(c) for c in h] for h in own_hands], dtype=np.int64).reshape(self.n_own, k)
        opp_cards = np.array([[card_index(c) for c in h] for h in opp_hands], dtype=np.int64).reshape(self.n_opp, k)
        own_ranks = np.asarray(own_ranks, dtype=np.int64)
        opp_ranks = np.asarray(opp_ranks, dtype=np.int64)

        # opponent hand holding exactly the same cards, counted twice by the card pass
        lookup = {tuple(sorted(row)): j for j, row in enumerate(opp_cards.tolist())}
        self.same = np.array([lookup.get(tuple(sorted(row)), -1) for row in own_cards.tolist()], dtype=np.int64)
        self.same_valid = self.same >= 0
        self.same_idx = np.where(self.same_valid, self.same, 0)

        # with single cards the only blocker is the identical hand, which ties
        self.single = k == 1 and bool(self.same_valid.all())
        self._cum = np.zeros(self.n_opp + 1)

        if kind == "fold":
            self.opp_cards_flat = opp_cards.ravel()
            self.own_cards = own_cards
            return

        self.order = np.argsort(opp_ranks, kind="stable")
        sorted_ranks = opp_ranks[self.order]
        self.lo = np.searchsorted(sorted_ranks, own_ranks, side="left")
        self.hi = np.searchsorted(sorted_ranks, own_ranks, side="right")
        if self.single:
            return

        # (card, opponent hand) incidences grouped by card, ranks ascending within a card
        pair_card = opp_cards.ravel()
        pair_hand = np.repeat(np.arange(self.n_opp), k)
        pair_rank = opp_ranks[pair_hand]
        perm = np.lexsort((pair_rank, pair_card))
        self.pair_hand = pair_hand[perm]
        pc, pr = pair_card[perm], pair_rank[perm]
        base = int(max(pr.max(initial=0), own_ranks.max(initial=0))) + 1
        keyed = pc * base + pr
        flat_own = own_cards.ravel()
        own_rank_rep = np.repeat(own_ranks, k)
        self.block_start = np.searchsorted(pc, flat_own, side="left")
        self.block_end = np.searchsorted(pc, flat_own, side="right")
        self.block_lo = np.searchsorted(keyed, flat_own * base + own_rank_rep, side="left")
        self.block_hi = np.searchsorted(keyed, flat_own * base + own_rank_rep, side="right")

    def evaluate(self, opp_reach: np.ndarray) -> Tuple[np.ndarray, int]:
        """Values for every own hand and the number of elementary steps used."""
        r = np.asarray(opp_reach, dtype=float)
        if r.shape != (self.n_opp,):
            raise ValueError(f"expected opponent reach of length {self.n_opp}, got {r.shape}")
        k = self.hand_size
        if self.single:
            ops = self.n_opp + self.n_own
            if self.kind == "fold":
                return self.scale * (r.sum() - r[self.same]), ops
            cum = self._cum
            np.cumsum(r[self.order], out=cum[1:])
            return self.scale * (cum[self.lo] + cum[self.hi] - cum[-1]), ops
        same = np.where(self.same_valid, r[self.same_idx], 0.0)
        ops = self.n_opp * (1 + k) + self.n_own
        if self.kind == "fold":
            total = r.sum()
            card_reach = np.bincount(self.opp_cards_flat, weights=np.repeat(r, k), minlength=52)
            blocked = card_reach[self.own_cards].sum(axis=1)
            if k > 1:
                blocked = blocked - same
            return self.scale * (total - blocked), ops
        cum = np.concatenate(([0.0], np.cumsum(r[self.order])))
        total = cum[-1]
        weaker = cum[self.lo]
        stronger = total - cum[self.hi]
        pcum = np.concatenate(([0.0], np.cumsum(r[self.pair_hand])))
        bw = (pcum[self.block_lo] - pcum[self.block_start]).reshape(self.n_own, k).sum(axis=1)
        bs = (pcum[self.block_end] - pcum[self.block_hi]).reshape(self.n_own, k).sum(axis=1)
        return self.scale * ((weaker - bw) - (stronger - bs)), ops


class PokerTerminal:
    """Both players' linear plans for one terminal public state of a river game."""

    def __init__(self, game: RiverGame, node: PublicState):
        if not isinstance(game, RiverGame):
            raise UnsupportedGameError("the linear terminal evaluation only supports river games")
        if not node.terminal:
            raise ValueError(f"public state {node.key!r} is not terminal")
        kind, folder, stake = game.terminal_outcome(node.key)
        chance = game.chance_per_deal
        hands = [[game.hand_of(p) for p in node.private[i]] for i in range(2)]
        ranks = [[game.rank(h) for h in hs] for hs in hands]
        self.kind = kind
        self.plans = []
        for i in range(2):
            o = 1 - i
            if kind == "fold":
                scale = -stake * chance if folder == i else stake * chance
            else:
                scale = stake * chance
            self.plans.append(LinearTerminalPlan(kind, hands[i], ranks[i], hands[o], ranks[o], scale))

    def evaluate(self, reaches: Sequence[np.ndarray]) -> Tuple[list, int]:
        v0, ops0 = self.plans[0].evaluate(reaches[1])
        v1, ops1 = self.plans[1].evaluate(reaches[0])
        return [v0, v1], ops0 + ops1


def terminal_eval_poker_linear(game, node: PublicState, reaches: Sequence[np.ndarray]) -> Tuple[list, int]:
    """Counterfactual values of both players at a terminal river public state."""
    return PokerTerminal(game, node).evaluate(reaches)

"""Heads-up river subgame with a fixed board and a pot/all-in bet abstraction.

Each player starts with ``stack`` chips of which ``pot // 2`` are already in
the pot.  Player 1 acts first.  ``c`` checks or calls, ``f`` folds (only when
facing a bet), ``p`` bets or raises the size of the pot after calling, ``a``
moves all-in.  A pot-sized raise that would reach the stack is dropped in
favour of ``a``; without ``a`` in the abstraction it is capped at the stack.

With ``hand=1`` every player holds a single card and showdowns are pure
high-card by card index; with ``hand=2`` the usual best-five evaluation over
board and hole cards applies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from ..fosg import NOOP, START, Game, GameError
from .cards import best_five_score, card_from_index, card_index, score_to_int

DEFAULT_BOARD = ("9s", "7c", "5s", "4h", "3c")
ACTION_ORDER = "fcpa"


class ConfigError(ValueError):
    """Raised for river configurations that cannot be built."""


@dataclass(frozen=True)
class RiverConfig:
    deck: Tuple[str, ...]
    board: Tuple[str, ...] = DEFAULT_BOARD
    hand_size: int = 1
    pot: int = 200
    stack: int = 1000
    abstraction: str = "fcpa"

    @classmethod
    def reduced(cls, deck_size: int, hand_size: int = 1, pot: int = 200, stack: int = 1000,
                abstraction: str = "fcpa", board: Sequence[str] = DEFAULT_BOARD) -> "RiverConfig":
        """Board plus the ``deck_size - len(board)`` strongest remaining cards."""
        board = tuple(board)
        if deck_size > 52:
            raise ConfigError("deck cannot exceed 52 cards")
        if deck_size < len(board) + 2 * hand_size:
            raise ConfigError(f"deck of {deck_size} cannot hold the board and two hands of {hand_size}")
        board_idx = {card_index(c) for c in board}
        rest = [card_from_index(i) for i in range(51, -1, -1) if i not in board_idx]
        deck = tuple(sorted(board + tuple(rest[: deck_size - len(board)]), key=card_index))
        return cls(deck=deck, board=board, hand_size=hand_size, pot=pot, stack=stack, abstraction=abstraction)

    def __post_init__(self):
        if self.hand_size not in (1, 2):
            raise ConfigError("hand size must be 1 or 2")
        if self.pot <= 0 or self.stack <= 0:
            raise ConfigError("pot and stack must be positive")
        if self.pot % 2:
            raise ConfigError("pot must split evenly between the players")
        if self.pot // 2 > self.stack:
            raise ConfigError("stack smaller than the pot contribution")
        if len(self.board) != 5 or len(set(self.board)) != 5:
            raise ConfigError("board must be five distinct cards")
        if not set(self.board) <= set(self.deck):
            raise ConfigError("board cards must come from the deck")
        if len(set(self.deck)) != len(self.deck):
            raise ConfigError("duplicate cards in deck")
        if len(self.deck) < 5 + 2 * self.hand_size:
            raise ConfigError("deck too small for the board and two hands")
        abs_set = set(self.abstraction)
        if not abs_set <= set(ACTION_ORDER) or not {"f", "c"} <= abs_set:
            raise ConfigError("abstraction must be a subset of 'fcpa' containing f and c")

    @property
    def candidates(self) -> Tuple[str, ...]:
        return tuple(c for c in self.deck if c not in self.board)

    @cached_property
    def hands(self) -> Tuple[Tuple[str, ...], ...]:
        combos = itertools.combinations(sorted(self.candidates, key=card_index, reverse=True), self.hand_size)
        return tuple(combos)


def hand_label(hand: Sequence[str]) -> str:
    return "".join(sorted(hand, key=card_index, reverse=True))


def hand_rank(config: RiverConfig, hand: Sequence[str]) -> int:
    """Integer strength of ``hand`` on the board; equal values chop."""
    hand = tuple(hand)
    if set(hand) & set(config.board):
        raise ValueError(f"hand {hand} intersects the board")
    if len(hand) != config.hand_size:
        raise ValueError(f"expected a hand of {config.hand_size} cards")
    if config.hand_size == 1:
        return card_index(hand[0])
    return score_to_int(best_five_score(config.board + hand))


def betting_state(config: RiverConfig, seq: str):
    """Replay a betting sequence: ``(contrib, to_act, folded, finished)``."""
    base = config.pot // 2
    contrib = [base, base]
    to_act = 0
    for k, a in enumerate(seq):
        me, opp = to_act, 1 - to_act
        if a == "f":
            return contrib, opp, me, True
        if a == "c":
            facing = contrib[opp] > contrib[me]
            contrib[me] = contrib[opp]
            if facing or k >= 1:
                return contrib, opp, None, True
        else:
            contrib[me] = raise_amount(config, contrib, me, a)
        to_act = opp
    return contrib, to_act, None, False


def raise_amount(config: RiverConfig, contrib, me: int, action: str) -> int:
    opp = 1 - me
    if action == "a":
        return config.stack
    to_call = contrib[opp] - contrib[me]
    target = contrib[opp] + sum(contrib) + to_call
    return min(target, config.stack)


def legal_bets(config: RiverConfig, contrib, me: int) -> Tuple[str, ...]:
    opp = 1 - me
    acts = []
    if contrib[opp] > contrib[me]:
        acts.append("f")
    acts.append("c")
    if contrib[opp] < config.stack:
        if "p" in config.abstraction:
            target = raise_amount(config, contrib, me, "p")
            if target < config.stack or "a" not in config.abstraction:
                acts.append("p")
        if "a" in config.abstraction:
            acts.append("a")
    return tuple(a for a in acts if a in config.abstraction)


class RiverGame(Game):
    """World: ``None`` before the deal, then ``(hand1, hand2, betting sequence)``."""

    num_players = 2

    def __init__(self, config: RiverConfig, name: str = "river"):
        self.config = config
        self.name = name
        self._ranks: Dict[Tuple[str, ...], int] = {h: hand_rank(config, h) for h in config.hands}

    def rank(self, hand: Tuple[str, ...]) -> int:
        return self._ranks[hand]

    @cached_property
    def deals(self) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
        hands = self.config.hands
        return [(a, b) for a in hands for b in hands if not set(a) & set(b)]

    @property
    def chance_per_deal(self) -> float:
        return 1.0 / len(self.deals)

    def initial_world(self):
        return None

    def is_terminal(self, w):
        return w is not None and betting_state(self.config, w[2])[3]

    def active_players(self, w):
        if w is None:
            return ()
        contrib, to_act, _, done = betting_state(self.config, w[2])
        return () if done else (to_act,)

    def legal_actions(self, w, player):
        if w is None:
            return (NOOP,)
        contrib, to_act, _, done = betting_state(self.config, w[2])
        if done or player != to_act:
            return (NOOP,)
        return legal_bets(self.config, contrib, to_act)

    def transition(self, w, joint):
        if w is None:
            p = self.chance_per_deal
            return [((a, b, ""), p) for a, b in self.deals]
        contrib, to_act, _, done = betting_state(self.config, w[2])
        if done:
            return []
        return [((w[0], w[1], w[2] + joint[to_act]), 1.0)]

    def observe(self, w, joint, nxt):
        if w is None:
            return (hand_label(nxt[0]), hand_label(nxt[1])), START
        return ("", ""), nxt[2][-1]

    def reward(self, w, joint, nxt):
        if nxt is None:
            return (0.0, 0.0)
        contrib, _, folded, done = betting_state(self.config, nxt[2])
        if not done:
            return (0.0, 0.0)
        if folded is not None:
            u = -contrib[0] if folded == 0 else contrib[1]
        else:
            r1, r2 = self._ranks[nxt[0]], self._ranks[nxt[1]]
            u = 0 if r1 == r2 else (contrib[1] if r1 > r2 else -contrib[0])
        return (float(u), float(-u))

    def hand_of(self, private_key: str) -> Tuple[str, ...]:
        """Recover the dealt hand from a private-infostate key."""
        first = private_key.split("/", 1)[0]
        if not first.startswith("."):
            raise GameError(f"private key {private_key!r} does not start with a deal")
        label = first[1:]
        return tuple(label[k : k + 2] for k in range(0, len(label), 2))

    def terminal_outcome(self, public_key: str):
        """``("fold", folder, stake)`` or ``("showdown", None, stake)`` for a terminal public state."""
        seq = "".join(public_key.split("/")[1:])
        contrib, _, folded, done = betting_state(self.config, seq)
        if not done:
            raise GameError(f"{public_key!r} is not terminal")
        if folded is not None:
            return "fold", folded, contrib[folded]
        return "showdown", None, contrib[0]

    def describe(self):
        c = self.config
        return {"name": self.name, "deck": list(c.deck), "board": list(c.board), "hand": c.hand_size,
                "pot": c.pot, "stack": c.stack, "abstraction": c.abstraction}

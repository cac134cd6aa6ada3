"""Card identifiers and a best-five hold'em hand evaluator."""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Sequence, Tuple

RANKS = "23456789TJQKA"
SUITS = "shdc"


def card_index(card: str) -> int:
    """Index in ``0..51``; increasing index means a stronger card (rank, then suit)."""
    if len(card) != 2 or card[0] not in RANKS or card[1] not in SUITS:
        raise ValueError(f"bad card identifier {card!r}")
    return RANKS.index(card[0]) * 4 + (3 - SUITS.index(card[1]))


def card_from_index(idx: int) -> str:
    return RANKS[idx // 4] + SUITS[3 - idx % 4]


def rank_value(card: str) -> int:
    return RANKS.index(card[0]) + 2


def _five_card_score(cards: Sequence[str]) -> Tuple[int, ...]:
    ranks = sorted((rank_value(c) for c in cards), reverse=True)
    flush = len({c[1] for c in cards}) == 1
    distinct = sorted(set(ranks), reverse=True)
    straight_high = 0
    if len(distinct) == 5:
        if distinct[0] - distinct[4] == 4:
            straight_high = distinct[0]
        elif distinct == [14, 5, 4, 3, 2]:
            straight_high = 5
    counts = Counter(ranks)
    # groups ordered by multiplicity then rank
    groups = sorted(counts.items(), key=lambda kv: (kv[1], kv[0]), reverse=True)
    shape = [m for _, m in groups]
    by_group = tuple(r for r, _ in groups)
    if straight_high and flush:
        return (8, straight_high)
    if shape == [4, 1]:
        return (7,) + by_group
    if shape == [3, 2]:
        return (6,) + by_group
    if flush:
        return (5,) + tuple(ranks)
    if straight_high:
        return (4, straight_high)
    if shape == [3, 1, 1]:
        return (3,) + by_group
    if shape == [2, 2, 1]:
        return (2,) + by_group
    if shape == [2, 1, 1, 1]:
        return (1,) + by_group
    return (0,) + tuple(ranks)


def best_five_score(cards: Iterable[str]) -> Tuple[int, ...]:
    """Lexicographically comparable score of the best 5-card subset."""
    cards = list(cards)
    if len(cards) < 5:
        raise ValueError("need at least five cards")
    return max(_five_card_score(c) for c in itertools.combinations(cards, 5))


def score_to_int(score: Tuple[int, ...]) -> int:
    value = 0
    for part in score + (0,) * (6 - len(score)):
        value = value * 16 + part
    return value

"""Policies, regret matching and strategy averaging."""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

Policy = Dict[str, Dict[str, float]]

AVERAGING = ("reach", "uniform")


def regret_matching(cumulative_regrets: Sequence[float]) -> np.ndarray:
    """Positive parts of the regrets, normalised; uniform when none is positive."""
    r = np.asarray(cumulative_regrets, dtype=float)
    if r.size == 0:
        raise ValueError("regret matching needs at least one action")
    pos = np.maximum(r, 0.0)
    total = pos.sum()
    if total > 0.0:
        return pos / total
    return np.full(r.size, 1.0 / r.size)


def uniform_policy(actions: Mapping[str, Sequence[str]]) -> Policy:
    return {key: {a: 1.0 / len(acts) for a in acts} for key, acts in actions.items()}


class AverageAccumulator:
    """Accumulates ``sum_t w_t * pi_t(a|s)`` per infostate.

    With ``weighting="reach"`` the weight is the player's own reach of the
    infostate under ``pi_t``; with ``"uniform"`` every iterate counts once.
    """

    def __init__(self, actions: Mapping[str, Sequence[str]], weighting: str = "reach"):
        if weighting not in AVERAGING:
            raise ValueError(f"unknown averaging {weighting!r}")
        self.weighting = weighting
        self.actions = {k: tuple(v) for k, v in actions.items()}
        self.weights = {k: np.zeros(len(v)) for k, v in self.actions.items()}
        self.normalizer = {k: 0.0 for k in self.actions}

    def update(self, policy: Policy, own_reach: Mapping[str, float]) -> None:
        for key, acts in self.actions.items():
            w = 1.0 if self.weighting == "uniform" else own_reach.get(key, 0.0)
            if w == 0.0:
                continue
            probs = policy[key]
            self.weights[key] += w * np.array([probs[a] for a in acts])
            self.normalizer[key] += w

    def extract(self) -> Policy:
        out: Policy = {}
        for key, acts in self.actions.items():
            z = self.normalizer[key]
            if z > 0.0:
                out[key] = dict(zip(acts, (self.weights[key] / z).tolist()))
            else:
                out[key] = {a: 1.0 / len(acts) for a in acts}
        return out


def update_average(acc: AverageAccumulator, policy: Policy, own_reach: Mapping[str, float]) -> None:
    acc.update(policy, own_reach)


def extract_average(acc: AverageAccumulator) -> Policy:
    return acc.extract()


@dataclass
class Counters:
    """Instrumentation of the regret-update passes."""

    histories_touched: int = 0
    infostate_value_updates: int = 0
    infostate_action_updates: int = 0
    terminal_eval_ops: int = 0
    wall_nanoseconds: int = 0

    @property
    def value_updates(self) -> int:
        return self.infostate_value_updates + self.infostate_action_updates

    def snapshot(self) -> "Counters":
        return Counters(**{f.name: getattr(self, f.name) for f in fields(self)})

    def as_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def __sub__(self, other: "Counters") -> "Counters":
        return Counters(**{f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)})


def policy_actions(policy: Policy) -> Dict[str, Tuple[str, ...]]:
    return {k: tuple(v) for k, v in policy.items()}

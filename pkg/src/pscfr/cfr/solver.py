"""CFR driver shared by all regret updaters."""

from __future__ import annotations

import math
import time
from typing import Callable, Optional

from ..fosg import Game
from .public import PublicStateCFR
from .tables import Counters, Policy
from .vanilla import VanillaCFR

ALGORITHMS = ("vanilla", "vanilla-lazy", "ps", "ps-domain")


def make_engine(game: Game, algo: str, averaging: str = "reach"):
    if algo == "vanilla":
        return VanillaCFR(game, averaging=averaging)
    if algo == "vanilla-lazy":
        return VanillaCFR(game, lazy=True, averaging=averaging)
    if algo == "ps":
        return PublicStateCFR(game, "generic", averaging=averaging)
    if algo == "ps-domain":
        return PublicStateCFR(game, "domain", averaging=averaging)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {', '.join(ALGORITHMS)}")


def default_cadence(iterations: int) -> int:
    return max(1, math.ceil(iterations / 64))


class CFRSolver:
    """Runs CFR iterations with one regret updater.

    Iteration ``t`` runs the update pass under ``pi^t`` (``pi^1`` uniform),
    adds ``pi^t`` to the average weighted by the own reach recorded in that
    pass, and then sets ``pi^{t+1}`` by regret matching.
    """

    def __init__(self, game: Game, algo: str = "vanilla", averaging: str = "reach"):
        self.game = game
        self.algo = algo
        t0 = time.perf_counter_ns()
        self.engine = make_engine(game, algo, averaging)
        self.setup_nanoseconds = time.perf_counter_ns() - t0
        self.iteration = 0

    @property
    def counters(self) -> Counters:
        return self.engine.counters

    def step(self) -> None:
        t0 = time.perf_counter_ns()
        eng = self.engine
        eng.regret_update()
        eng.accumulate()
        eng.regret_matching()
        self.iteration += 1
        eng.counters.wall_nanoseconds += time.perf_counter_ns() - t0

    def average_policy(self) -> Policy:
        """Average of ``pi^1 .. pi^T`` after ``T`` completed iterations."""
        return self.engine.average_policy()

    def current_policy(self) -> Policy:
        return self.engine.current_policy()


def cfr_solve(game: Game, updater: str, iterations: int, record=None,
              exploitability_every: Optional[int] = None, averaging: str = "reach",
              callback: Optional[Callable[[CFRSolver], None]] = None) -> Policy:
    """Run ``iterations`` of CFR and return the average policy.

    When ``record`` is a RunRecord it receives one row per iteration, with
    exploitability filled in every ``exploitability_every`` iterations and
    at the last one.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    solver = CFRSolver(game, updater, averaging)
    every = exploitability_every or default_cadence(iterations)
    for t in range(1, iterations + 1):
        solver.step()
        if record is not None:
            expl = None
            if t % every == 0 or t == iterations:
                from ..evaluation import exploitability

                expl = exploitability(game, solver.average_policy())
            record.add(t, updater, expl, solver.counters.value_updates, solver.counters.wall_nanoseconds / 1e6)
        if callback is not None:
            callback(solver)
    return solver.average_policy()

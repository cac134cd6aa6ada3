"""Expected values, best responses, exploitability and run records.

These oracles share no code with the solvers.  Every history of the game is
flattened once into arrays (parent, depth, edge probabilities per player,
terminal utilities) and all quantities are computed level by level with
numpy.  Exploitability is NashConv divided by the number of players, i.e.
``(BR_1 + BR_2) / 2`` for two-player zero-sum games.
"""

from __future__ import annotations

import csv
import io
import weakref
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .fosg import Game, UnsupportedGameError, initial_history, successors

Policy = Dict[str, Dict[str, float]]


class _Flat:
    """The history tree of a game as parallel arrays."""

    def __init__(self, game: Game):
        n = game.num_players
        self.n = n
        self.keys: List[str] = []
        self.owner: List[int] = []
        self.actions: List[Tuple[str, ...]] = []
        ids: Dict[str, int] = {}
        parent, depth, chance, terminal, utility = [], [], [], [], []
        info = [[] for _ in range(n)]
        act = [[] for _ in range(n)]
        edge_info = [[] for _ in range(n)]

        root = initial_history(game)
        stack = [(root, -1, 1.0, (0,) * n, (-1,) * n)]
        while stack:
            h, par, p, acts, pinfo = stack.pop()
            idx = len(parent)
            parent.append(par)
            depth.append(h.depth)
            chance.append(p)
            terminal.append(h.terminal)
            utility.append(h.utility if h.terminal else (0.0,) * n)
            active = () if h.terminal else game.active_players(h.world)
            here = []
            for i in range(n):
                act[i].append(acts[i])
                edge_info[i].append(pinfo[i])
                sid = -1
                if i in active:
                    key = h.infostate_key(i)
                    sid = ids.get(key)
                    if sid is None:
                        sid = ids[key] = len(self.keys)
                        self.keys.append(key)
                        self.owner.append(i)
                        self.actions.append(tuple(game.legal_actions(h.world, i)))
                info[i].append(sid)
                here.append(sid)
            if h.terminal:
                continue
            for joint, child, prob in reversed(successors(game, h)):
                a = tuple(self.actions[here[i]].index(joint[i]) if here[i] >= 0 else 0 for i in range(n))
                stack.append((child, idx, prob, a, tuple(here)))

        self.parent = np.array(parent, dtype=np.int64)
        self.depth = np.array(depth, dtype=np.int64)
        self.chance = np.array(chance)
        self.terminal = np.array(terminal, dtype=bool)
        self.utility = np.array(utility, dtype=float).reshape(len(parent), n)
        self.info = [np.array(x, dtype=np.int64) for x in info]
        self.act = [np.array(x, dtype=np.int64) for x in act]
        self.edge_info = [np.array(x, dtype=np.int64) for x in edge_info]
        self.width = max((len(a) for a in self.actions), default=1)
        self.levels = [np.flatnonzero(self.depth == d) for d in range(int(self.depth.max()) + 1)]
        self.zero_sum = bool(np.all(np.abs(self.utility[self.terminal].sum(axis=1)) <= 1e-9))

    def policy_matrix(self, profile: Mapping[str, Mapping[str, float]]) -> np.ndarray:
        """``(infostates, width)`` probabilities; missing infostates are uniform."""
        m = np.zeros((len(self.keys), self.width))
        for s, (key, acts) in enumerate(zip(self.keys, self.actions)):
            probs = profile.get(key)
            if probs is None:
                m[s, : len(acts)] = 1.0 / len(acts)
            else:
                m[s, : len(acts)] = [probs.get(a, 0.0) for a in acts]
        return m

    def edge_probs(self, pol: np.ndarray, player: int) -> np.ndarray:
        """Probability of each history's incoming edge under ``player``'s policy."""
        e = self.edge_info[player]
        out = np.ones(len(e))
        mask = e >= 0
        out[mask] = pol[e[mask], self.act[player][mask]]
        return out

    def path_products(self, edge: np.ndarray) -> np.ndarray:
        reach = edge.copy()
        for lvl in self.levels[1:]:
            reach[lvl] *= reach[self.parent[lvl]]
        return reach


_CACHE: "weakref.WeakKeyDictionary[Game, _Flat]" = weakref.WeakKeyDictionary()


def _flat(game: Game) -> _Flat:
    flat = _CACHE.get(game)
    if flat is None:
        flat = _CACHE[game] = _Flat(game)
    return flat


def expected_values(game: Game, profile: Policy) -> np.ndarray:
    """Expected utility of every player under ``profile``."""
    f = _flat(game)
    pol = f.policy_matrix(profile)
    edge = f.chance.copy()
    for i in range(f.n):
        edge *= f.edge_probs(pol, i)
    reach = f.path_products(edge)
    return (reach[f.terminal, None] * f.utility[f.terminal]).sum(axis=0)


@dataclass
class BrResult:
    player: int
    value: float
    policy: Policy


def best_response_value(game: Game, profile: Policy, player: int) -> BrResult:
    """Exact best response of ``player`` (0-based) against the rest of ``profile``."""
    if game.num_players != 2:
        raise UnsupportedGameError("best responses are implemented for two-player games only")
    f = _flat(game)
    pol = f.policy_matrix(profile)
    edge = f.chance.copy()
    for j in range(f.n):
        if j != player:
            edge *= f.edge_probs(pol, j)
    cf = f.path_products(edge)
    w = np.where(f.terminal, cf * f.utility[:, player], 0.0)
    info = f.info[player]
    best = np.zeros(len(f.keys), dtype=np.int64)
    width = f.width
    legal = np.array([len(acts) for acts in f.actions])[:, None] > np.arange(width)[None, :]
    for lvl in reversed(f.levels[1:]):
        par = f.parent[lvl]
        pinfo = info[par]
        mine = pinfo >= 0
        if mine.any():
            a = f.act[player][lvl]
            flat = pinfo[mine] * width + a[mine]
            totals = np.bincount(flat, weights=w[lvl][mine], minlength=len(f.keys) * width).reshape(-1, width)
            totals = np.where(legal, totals, -np.inf)
            touched = np.unique(pinfo[mine])
            best[touched] = np.argmax(totals[touched], axis=1)
            keep = ~mine | (best[np.where(mine, pinfo, 0)] == a)
        else:
            keep = np.ones(len(lvl), dtype=bool)
        np.add.at(w, par[keep], w[lvl][keep])
    value = float(w[0])
    policy = {f.keys[s]: {a: float(k == best[s]) for k, a in enumerate(f.actions[s])}
              for s in range(len(f.keys)) if f.owner[s] == player}
    return BrResult(player, value, policy)


def is_two_player_zero_sum(game: Game) -> bool:
    f = _flat(game)
    return f.n == 2 and f.zero_sum


def exploitability(game: Game, profile: Policy) -> float:
    """``(BR_1 + BR_2) / 2`` for a two-player zero-sum game."""
    f = _flat(game)
    if f.n != 2:
        raise UnsupportedGameError("exploitability is defined here for two-player games only")
    if not f.zero_sum:
        raise UnsupportedGameError(f"{game.name} is not zero-sum")
    return 0.5 * sum(best_response_value(game, profile, i).value for i in range(2))


def strategy_distance(a: Policy, b: Policy) -> float:
    """Largest absolute probability gap; an infostate missing on one side counts as uniform."""
    worst = 0.0
    for key in set(a) | set(b):
        pa, pb = a.get(key), b.get(key)
        acts = set(pa or ()) | set(pb or ())
        ua = 1.0 / len(pa or acts)
        ub = 1.0 / len(pb or acts)
        for act in acts:
            x = pa.get(act, 0.0) if pa is not None else ua
            y = pb.get(act, 0.0) if pb is not None else ub
            worst = max(worst, abs(x - y))
    return worst


CSV_HEADER = ("iter", "algo", "exploitability", "value_updates_cum", "wall_ms")


@dataclass
class RunRow:
    iteration: int
    algo: str
    exploitability: Optional[float]
    value_updates_cum: int
    wall_ms: float


@dataclass
class RunRecord:
    rows: List[RunRow] = field(default_factory=list)

    def add(self, iteration: int, algo: str, exploitability: Optional[float], value_updates_cum: int,
            wall_ms: float) -> None:
        self.rows.append(RunRow(iteration, algo, exploitability, value_updates_cum, wall_ms))

    def for_algo(self, algo: str) -> List[RunRow]:
        return [r for r in self.rows if r.algo == algo]

    def sampled(self, algo: Optional[str] = None) -> List[RunRow]:
        return [r for r in self.rows if r.exploitability is not None and (algo is None or r.algo == algo)]

    def to_csv(self, include_wall: bool = True) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            expl = "" if r.exploitability is None else repr(float(r.exploitability))
            wall = f"{r.wall_ms:.3f}" if include_wall else ""
            writer.writerow((r.iteration, r.algo, expl, r.value_updates_cum, wall))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "RunRecord":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected header {header}")
        rec = cls()
        for it, algo, expl, upd, wall in reader:
            rec.add(int(it), algo, float(expl) if expl else None, int(upd), float(wall) if wall else 0.0)
        return rec

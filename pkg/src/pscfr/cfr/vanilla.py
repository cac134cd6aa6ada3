"""Regret updates on the history tree."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from ..fosg import Game, History, initial_history, successors
from .tables import AverageAccumulator, Counters, Policy, regret_matching

_NOOP_POLICY = (1.0,)


class _Node:
    __slots__ = ("infos", "children", "terminal", "chance", "utility")

    def __init__(self, infos, terminal, chance, utility):
        self.infos = infos
        self.terminal = terminal
        self.chance = chance
        self.utility = utility
        self.children: List[Tuple[Tuple[int, ...], "_Node"]] = []


class VanillaCFR:
    """Vanilla CFR over histories.

    By default the history tree (children, infostate ids, chance reach and
    utilities) is built once at setup.  With ``lazy=True`` nothing but the
    per-infostate tables is kept and histories are regenerated from the game
    on every pass, trading speed for memory.
    """

    def __init__(self, game: Game, lazy: bool = False, averaging: str = "reach"):
        self.game = game
        self.n = game.num_players
        self.lazy = lazy
        self.counters = Counters()
        self.keys: List[str] = []
        self.actions: List[Tuple[str, ...]] = []
        self.owner: List[int] = []
        self._ids: Dict[str, int] = {}
        self.num_tree_nodes = 0
        if lazy:
            self._discover()
            self.root = None
        else:
            self.root = self._build(initial_history(game))
        self.policy = [[1.0 / len(a)] * len(a) for a in self.actions]
        self.regrets = [[0.0] * len(a) for a in self.actions]
        self.own_reach = [0.0] * len(self.actions)
        self.average = AverageAccumulator(dict(zip(self.keys, self.actions)), averaging)

    # -- setup

    def _infostate_id(self, h: History, i: int) -> int:
        key = h.infostate_key(i)
        sid = self._ids.get(key)
        if sid is None:
            sid = self._ids[key] = len(self.keys)
            self.keys.append(key)
            self.actions.append(tuple(self.game.legal_actions(h.world, i)))
            self.owner.append(i)
        return sid

    def _infos(self, h: History) -> Tuple[int, ...]:
        if h.terminal:
            return (-1,) * self.n
        active = self.game.active_players(h.world)
        return tuple(self._infostate_id(h, i) if i in active else -1 for i in range(self.n))

    def _build(self, h: History) -> _Node:
        self.num_tree_nodes += 1
        node = _Node(self._infos(h), h.terminal, h.chance_reach, h.utility)
        if not h.terminal:
            for joint, child, _ in successors(self.game, h):
                node.children.append((self._action_indices(node.infos, joint), self._build(child)))
        return node

    def _discover(self) -> None:
        stack = [initial_history(self.game)]
        while stack:
            h = stack.pop()
            self._infos(h)
            if not h.terminal:
                stack.extend(child for _, child, _ in successors(self.game, h))

    def _action_indices(self, infos, joint) -> Tuple[int, ...]:
        return tuple(0 if sid < 0 else self.actions[sid].index(joint[i]) for i, sid in enumerate(infos))

    # -- regret update

    def regret_update(self) -> List[float]:
        """One pass from the root with all reaches 1; returns the root values."""
        reach = [1.0] * self.n
        if self.lazy:
            return self._update_lazy(initial_history(self.game), reach)
        return self._update(self.root, reach)

    def _terminal_values(self, chance, utility, reach) -> List[float]:
        n = self.n
        self.counters.infostate_value_updates += n
        out = []
        for i in range(n):
            r = chance
            for j in range(n):
                if j != i:
                    r *= reach[j]
            out.append(r * utility[i])
        return out

    def _update(self, node: _Node, reach: List[float]) -> List[float]:
        self.counters.histories_touched += 1
        if node.terminal:
            return self._terminal_values(node.chance, node.utility, reach)
        n = self.n
        infos = node.infos
        pols = [self.policy[sid] if sid >= 0 else _NOOP_POLICY for sid in infos]
        q = [[0.0] * len(p) for p in pols]
        for acts, child in node.children:
            vals = self._update(child, [reach[i] * pols[i][acts[i]] for i in range(n)])
            for i in range(n):
                q[i][acts[i]] += vals[i]
            self.counters.infostate_action_updates += n
        return self._close(infos, pols, q, reach)

    def _close(self, infos, pols, q, reach) -> List[float]:
        v = []
        for i, sid in enumerate(infos):
            qi = q[i]
            vi = sum(p * x for p, x in zip(pols[i], qi))
            v.append(vi)
            if sid >= 0:
                regrets = self.regrets[sid]
                for a in range(len(qi)):
                    regrets[a] += qi[a] - vi
                self.own_reach[sid] = reach[i]
        self.counters.infostate_value_updates += self.n
        return v

    def _update_lazy(self, h: History, reach: List[float]) -> List[float]:
        self.counters.histories_touched += 1
        if h.terminal:
            return self._terminal_values(h.chance_reach, h.utility, reach)
        n = self.n
        infos = self._infos(h)
        pols = [self.policy[sid] if sid >= 0 else _NOOP_POLICY for sid in infos]
        q = [[0.0] * len(p) for p in pols]
        for joint, child, _ in successors(self.game, h):
            acts = self._action_indices(infos, joint)
            vals = self._update_lazy(child, [reach[i] * pols[i][acts[i]] for i in range(n)])
            for i in range(n):
                q[i][acts[i]] += vals[i]
            self.counters.infostate_action_updates += n
        return self._close(infos, pols, q, reach)

    # -- policy bookkeeping

    def regret_matching(self) -> None:
        self.policy = [regret_matching(r).tolist() for r in self.regrets]

    def accumulate(self) -> None:
        self.average.update(self.current_policy(), self._reach_by_key(self.own_reach))

    def _reach_by_key(self, reach: List[float]) -> Dict[str, float]:
        return dict(zip(self.keys, reach))

    def current_policy(self) -> Policy:
        return {k: dict(zip(a, p)) for k, a, p in zip(self.keys, self.actions, self.policy)}

    def regret_table(self) -> Dict[str, Dict[str, float]]:
        return {k: dict(zip(a, r)) for k, a, r in zip(self.keys, self.actions, self.regrets)}

    def average_policy(self) -> Policy:
        return self.average.extract()

    def memory_entries(self) -> Dict[str, int]:
        table = sum(len(a) for a in self.actions)
        return {
            "tree_nodes": self.num_tree_nodes,
            "tree_edges": max(self.num_tree_nodes - 1, 0),
            "table_entries": 3 * table + len(self.actions),
        }


def hist_regret_update(solver: VanillaCFR, history: Optional[History] = None,
                       reach: Optional[Sequence[float]] = None) -> List[float]:
    """Regret update from ``history`` (default: the root with all reaches 1).

    Returns the counterfactual value of ``history`` for every player and adds
    the regrets of every infostate below it into ``solver``.
    """
    if history is None:
        return solver.regret_update()
    r = [1.0] * solver.n if reach is None else [float(x) for x in reach]
    return solver._update_lazy(history, r)

"""Regret updates on the public tree.

Every public state holds, per player, a vector over its private infostates.
A pass pushes own-reach vectors down the tree, evaluates the terminal public
states against the opponents' reach, and folds counterfactual values back up
while updating regrets.  Chance probability lives entirely in the
chance-weighted utility (ChWU) matrices of the terminal public states.
"""

from __future__ import annotations

from typing import Dict, List, Sequence

import numpy as np

from ..fosg import Game, PublicState, UnsupportedGameError, build_public_tree
from .tables import AVERAGING, Counters, Policy


def build_chwu(node: PublicState) -> List[np.ndarray]:
    """Dense ``ChWU_i`` arrays indexed by the private-infostate profile."""
    if not node.terminal:
        raise ValueError(f"public state {node.key!r} is not terminal")
    shape = tuple(len(p) for p in node.private)
    mats = [np.zeros(shape) for _ in range(node.num_players)]
    for profile, chance, utility in node.terminal_histories:
        for i, m in enumerate(mats):
            m[profile] += chance * utility[i]
    return mats


def terminal_eval_generic(chwu_i: np.ndarray, player: int, reaches: Sequence[np.ndarray]) -> np.ndarray:
    """Contract ``ChWU_i`` with every opponent's reach vector."""
    m = np.moveaxis(np.asarray(chwu_i), player, 0)
    others = [j for j in range(m.ndim) if j != player]
    for j in others:
        r = np.asarray(reaches[j], dtype=float)
        if r.shape != (m.shape[1],):
            raise ValueError(f"reach of player {j + 1} has shape {r.shape}, expected ({m.shape[1]},)")
        m = np.tensordot(m, r, axes=([1], [0]))
    return m


class _Node:
    __slots__ = ("state", "terminal", "n", "width", "mask", "decision", "uniform", "has_decision",
                 "policy", "regrets", "avg", "norm", "edges", "reach", "chwu", "chwu_t", "poker", "cells")

    def __init__(self, state: PublicState):
        self.state = state
        self.terminal = state.terminal
        self.n = [len(p) for p in state.private]
        self.edges = []
        self.reach: List[np.ndarray] = []
        self.poker = None
        if self.terminal:
            self.chwu = build_chwu(state)
            self.chwu_t = [np.ascontiguousarray(m.T) for m in self.chwu] if len(self.n) == 2 else None
            self.cells = int(np.prod(self.n))
            return
        self.width, self.mask, self.decision, self.uniform = [], [], [], []
        self.has_decision, self.policy, self.regrets, self.avg, self.norm = [], [], [], [], []
        for i in range(len(self.n)):
            acts = state.actions[i]
            k = max(len(a) for a in acts)
            mask = np.zeros((self.n[i], k))
            for j, a in enumerate(acts):
                mask[j, : len(a)] = 1.0
            decision = np.array(state.active[i], dtype=bool)
            uniform = mask / mask.sum(axis=1, keepdims=True)
            self.width.append(k)
            self.mask.append(mask * decision[:, None])
            self.decision.append(decision)
            self.uniform.append(uniform)
            self.has_decision.append(bool(decision.any()))
            self.policy.append(uniform.copy())
            self.regrets.append(np.zeros((self.n[i], k)))
            self.avg.append(np.zeros((self.n[i], k)))
            self.norm.append(np.zeros(self.n[i]))


class PublicStateCFR:
    """CFR regret updates over public states.

    ``terminal="generic"`` evaluates terminals with ChWU products;
    ``terminal="domain"`` uses the linear rank sweep, available for river
    games only.
    """

    def __init__(self, game: Game, terminal: str = "generic", averaging: str = "reach"):
        if terminal not in ("generic", "domain"):
            raise ValueError(f"unknown terminal evaluation {terminal!r}")
        if averaging not in AVERAGING:
            raise ValueError(f"unknown averaging {averaging!r}")
        self.game = game
        self.n = game.num_players
        self.terminal_mode = terminal
        self.averaging = averaging
        self.counters = Counters()
        if terminal == "domain":
            from ..games.river import RiverGame

            if not isinstance(game, RiverGame):
                raise UnsupportedGameError("domain-specific terminal evaluation requires a river game")
        self.tree = build_public_tree(game)
        self.nodes: List[_Node] = []
        self.root = self._convert(self.tree)

    def _convert(self, state: PublicState) -> _Node:
        node = _Node(state)
        self.nodes.append(node)
        if node.terminal:
            if self.terminal_mode == "domain":
                from .poker_eval import PokerTerminal

                node.poker = PokerTerminal(self.game, state)
            return node
        for t, child_state in enumerate(state.children):
            child = self._convert(child_state)
            par, flat = [], []
            for i in range(self.n):
                p = np.array(state.parent_index[t][i], dtype=np.int64)
                a = np.array(state.parent_action[t][i], dtype=np.int64)
                par.append(p)
                flat.append(p * node.width[i] + a)
            node.edges.append((child, par, flat))
        return node

    # -- regret update

    def regret_update(self) -> List[np.ndarray]:
        """One pass with root reaches 1; returns root counterfactual value vectors."""
        reach = [np.ones(k) for k in self.root.n]
        return self._update(self.root, reach)

    def _terminal(self, node: _Node, reach: List[np.ndarray]) -> List[np.ndarray]:
        c = self.counters
        c.infostate_value_updates += sum(node.n)
        if node.poker is not None:
            values, ops = node.poker.evaluate(reach)
            c.terminal_eval_ops += ops
            return values
        c.terminal_eval_ops += node.cells
        if node.chwu_t is not None:
            return [node.chwu[0] @ reach[1], node.chwu_t[1] @ reach[0]]
        return [terminal_eval_generic(node.chwu[i], i, reach) for i in range(self.n)]

    def _update(self, node: _Node, reach: List[np.ndarray]) -> List[np.ndarray]:
        node.reach = reach
        if node.terminal:
            return self._terminal(node, reach)
        c = self.counters
        n = self.n
        flat_policy = [p.ravel() for p in node.policy]
        sizes = [node.n[i] * node.width[i] for i in range(n)]
        q = [np.zeros(s) for s in sizes]
        for child, par, flat in node.edges:
            child_reach = [reach[i][par[i]] * flat_policy[i][flat[i]] if node.has_decision[i] else reach[i][par[i]]
                           for i in range(n)]
            values = self._update(child, child_reach)
            for i in range(n):
                q[i] += np.bincount(flat[i], weights=values[i], minlength=sizes[i])
            c.infostate_action_updates += sum(child.n)
        out = []
        for i in range(n):
            qi = q[i].reshape(node.n[i], node.width[i])
            if not node.has_decision[i]:
                out.append(qi[:, 0] if node.width[i] == 1 else (node.policy[i] * qi).sum(axis=1))
                continue
            vi = (node.policy[i] * qi).sum(axis=1)
            node.regrets[i] += (qi - vi[:, None]) * node.mask[i]
            out.append(vi)
        c.infostate_value_updates += sum(node.n)
        return out

    # -- policy bookkeeping

    def regret_matching(self) -> None:
        for node in self.nodes:
            if node.terminal:
                continue
            for i in range(self.n):
                if not node.has_decision[i]:
                    continue
                pos = np.maximum(node.regrets[i], 0.0)
                total = pos.sum(axis=1, keepdims=True)
                safe = np.where(total > 0.0, total, 1.0)
                node.policy[i] = np.where(total > 0.0, pos / safe, node.uniform[i])

    def accumulate(self) -> None:
        for node in self.nodes:
            if node.terminal:
                continue
            for i in range(self.n):
                if not node.has_decision[i]:
                    continue
                if self.averaging == "uniform":
                    w = node.decision[i].astype(float)
                else:
                    w = node.reach[i] * node.decision[i]
                node.avg[i] += w[:, None] * node.policy[i]
                node.norm[i] += w

    def _export(self, tables) -> Dict[str, Dict[str, float]]:
        out = {}
        for node in self.nodes:
            if node.terminal:
                continue
            st = node.state
            for i in range(self.n):
                for j in np.flatnonzero(node.decision[i]):
                    acts = st.actions[i][j]
                    row = tables(node, i, j)
                    out[st.infostate_key(i, j)] = dict(zip(acts, row[: len(acts)].tolist()))
        return out

    def current_policy(self) -> Policy:
        return self._export(lambda node, i, j: node.policy[i][j])

    def regret_table(self) -> Dict[str, Dict[str, float]]:
        return self._export(lambda node, i, j: node.regrets[i][j])

    def average_policy(self) -> Policy:
        def row(node, i, j):
            z = node.norm[i][j]
            return node.avg[i][j] / z if z > 0.0 else node.uniform[i][j]

        return self._export(row)

    def memory_entries(self) -> Dict[str, int]:
        chwu = sum(node.cells * self.n for node in self.nodes if node.terminal)
        tables = sum(int(node.mask[i].sum()) * 3 + int(node.decision[i].sum())
                     for node in self.nodes if not node.terminal for i in range(self.n))
        return {"public_states": len(self.nodes), "chwu_entries": chwu, "table_entries": tables}


def ps_regret_update(solver: PublicStateCFR) -> List[np.ndarray]:
    return solver.regret_update()

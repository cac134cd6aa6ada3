"""Factored-observation stochastic games: histories, infostates and public states.

A game is described through world states.  Every transition out of a
world state emits one private observation per player plus one public
observation, and possibly a reward vector.  Three views of the game tree
are derived from that:

* histories -- the concrete world/action trajectories,
* infostates -- what a single player knows (private part + public part),
* public states -- the sequence of public observations.

Infostate keys have the form ``<player>:<private entries>|<public entries>``
where entries are joined by ``/``.  Each step contributes exactly one entry
to both parts.  A private entry is the player's own action token, followed
by ``.<obs>`` when the player also got a private observation; a step where
the player did nothing and saw nothing is rendered ``-``.  Players are
rendered 1-based, everything else in this package is 0-based.
"""

from __future__ import annotations

import abc
import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

NOOP = ""
START = "start"
EMPTY_ENTRY = "-"
_FORBIDDEN = set("/|.:") | {" ", "\t", "\n", "\r"}

World = Any
JointAction = Tuple[str, ...]


class GameError(Exception):
    """Raised when a game violates the FOSG contract."""


class UnsupportedGameError(GameError):
    """Raised when an operation is not defined for the given game."""


def check_token(token: str) -> str:
    if token == EMPTY_ENTRY or any(ch in _FORBIDDEN for ch in token):
        raise GameError(f"invalid observation/action token {token!r}")
    return token


class Game(abc.ABC):
    """Abstract FOSG.  Subclasses are immutable once constructed."""

    num_players: int = 2
    name: str = "game"

    @abc.abstractmethod
    def initial_world(self) -> World:
        ...

    @abc.abstractmethod
    def active_players(self, w: World) -> Tuple[int, ...]:
        ...

    @abc.abstractmethod
    def legal_actions(self, w: World, player: int) -> Tuple[str, ...]:
        """Legal actions of ``player`` at ``w``; the no-op singleton for inactive players."""

    @abc.abstractmethod
    def is_terminal(self, w: World) -> bool:
        ...

    @abc.abstractmethod
    def transition(self, w: World, joint: JointAction) -> Sequence[Tuple[World, float]]:
        ...

    @abc.abstractmethod
    def observe(self, w: World, joint: JointAction, nxt: World) -> Tuple[Tuple[str, ...], str]:
        """Return ``(private observation per player, public observation)``."""

    def reward(self, w: World, joint: JointAction, nxt: World) -> Tuple[float, ...]:
        return (0.0,) * self.num_players

    def describe(self) -> Dict[str, Any]:
        return {"name": self.name, "num_players": self.num_players}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def _private_entry(action: str, obs: str) -> str:
    if obs:
        return f"{action}.{obs}"
    return action or EMPTY_ENTRY


@dataclass(frozen=True)
class History:
    """A playthrough prefix ``w0 a0 w1 ... wk``.

    ``private`` holds the rendered private entries per player and ``public``
    the rendered public entries; both have one entry per step.
    """

    worlds: Tuple[World, ...]
    actions: Tuple[JointAction, ...]
    chance_reach: float
    private: Tuple[Tuple[str, ...], ...]
    public: Tuple[str, ...]
    utility: Tuple[float, ...]
    terminal: bool

    @property
    def world(self) -> World:
        return self.worlds[-1]

    @property
    def depth(self) -> int:
        return len(self.actions)

    def private_key(self, player: int) -> str:
        return "/".join(self.private[player])

    def public_key(self) -> str:
        return "/".join(self.public)

    def infostate_key(self, player: int) -> str:
        return f"{player + 1}:{self.private_key(player)}|{self.public_key()}"


@dataclass(frozen=True)
class InfoState:
    player: int
    private: Tuple[str, ...]
    public: Tuple[str, ...]

    @property
    def key(self) -> str:
        return f"{self.player + 1}:{'/'.join(self.private)}|{'/'.join(self.public)}"

    @property
    def public_key(self) -> str:
        return "/".join(self.public)

    @classmethod
    def parse(cls, key: str) -> "InfoState":
        head, sep, rest = key.partition(":")
        if not sep or "|" not in rest:
            raise ValueError(f"malformed infostate key {key!r}")
        try:
            player = int(head) - 1
        except ValueError:
            raise ValueError(f"malformed player in infostate key {key!r}") from None
        if player < 0:
            raise ValueError(f"malformed player in infostate key {key!r}")
        priv, _, pub = rest.partition("|")
        return cls(player, tuple(priv.split("/")) if priv else (), tuple(pub.split("/")) if pub else ())


def initial_history(game: Game) -> History:
    w = game.initial_world()
    n = game.num_players
    return History(
        worlds=(w,),
        actions=(),
        chance_reach=1.0,
        private=((),) * n,
        public=(),
        utility=(0.0,) * n,
        terminal=game.is_terminal(w),
    )


def joint_actions(game: Game, w: World) -> List[JointAction]:
    per_player = [game.legal_actions(w, i) for i in range(game.num_players)]
    return list(itertools.product(*per_player))


def successors(game: Game, h: History) -> List[Tuple[JointAction, History, float]]:
    """All one-step extensions of ``h`` with their transition probabilities."""
    if h.terminal:
        raise GameError("successors() called on a terminal history")
    w = h.world
    out = []
    for joint in joint_actions(game, w):
        dist = game.transition(w, joint)
        if not dist:
            raise GameError(f"no transition defined at non-terminal world {w!r}")
        total = 0.0
        for nxt, prob in dist:
            if prob <= 0.0:
                continue
            total += prob
            priv_obs, pub_obs = game.observe(w, joint, nxt)
            rewards = game.reward(w, joint, nxt)
            private = tuple(
                h.private[i] + (_private_entry(joint[i], priv_obs[i]),) for i in range(game.num_players)
            )
            child = History(
                worlds=h.worlds + (nxt,),
                actions=h.actions + (joint,),
                chance_reach=h.chance_reach * prob,
                private=private,
                public=h.public + (pub_obs or EMPTY_ENTRY,),
                utility=tuple(u + r for u, r in zip(h.utility, rewards)),
                terminal=game.is_terminal(nxt),
            )
            out.append((joint, child, prob))
        if abs(total - 1.0) > 1e-12:
            raise GameError(f"transition probabilities at {w!r} under {joint} sum to {total}")
    return out


def infostate_of(game: Game, h: History, player: int) -> InfoState:
    return InfoState(player, h.private[player], h.public)


def iter_histories(game: Game) -> Iterator[History]:
    """Depth-first preorder over every history of a finite game."""
    stack = [initial_history(game)]
    while stack:
        h = stack.pop()
        yield h
        if not h.terminal:
            stack.extend(child for _, child, _ in reversed(successors(game, h)))


def is_active(game: Game, h: History, player: int) -> bool:
    return player in game.active_players(h.world)


# ---------------------------------------------------------------------------
# public tree


@dataclass
class PublicState:
    """Node of the public tree.

    ``private[i]`` lists the private-infostate keys of player ``i`` compatible
    with this public state.  For non-terminal nodes ``actions[i][j]`` are the
    legal actions of the ``j``-th private infostate of player ``i``.  For each
    child ``t``, ``parent_index[t][i][k]`` and ``parent_action[t][i][k]`` say
    which private infostate here and which action of it the ``k``-th private
    infostate of ``t`` extends.  Terminal nodes keep
    ``(profile, chance_reach, utility)`` for each terminal history.
    """

    public: Tuple[str, ...]
    num_players: int
    terminal: bool = False
    private: List[List[str]] = field(default_factory=list)
    actions: List[List[Tuple[str, ...]]] = field(default_factory=list)
    active: List[List[bool]] = field(default_factory=list)
    children: List["PublicState"] = field(default_factory=list)
    parent_index: List[List[List[int]]] = field(default_factory=list)
    parent_action: List[List[List[int]]] = field(default_factory=list)
    terminal_histories: List[Tuple[Tuple[int, ...], float, Tuple[float, ...]]] = field(default_factory=list)
    num_histories: int = 0

    @property
    def key(self) -> str:
        return "/".join(self.public)

    def infostate_key(self, player: int, index: int) -> str:
        return f"{player + 1}:{self.private[player][index]}|{self.key}"

    def walk(self) -> Iterator["PublicState"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __repr__(self) -> str:
        sizes = ",".join(str(len(p)) for p in self.private)
        return f"<PublicState {self.key!r} priv=({sizes}) children={len(self.children)}>"


def build_public_tree(game: Game) -> PublicState:
    """Group all histories by public observation sequence."""
    n = game.num_players
    nodes: Dict[Tuple[str, ...], PublicState] = {}
    index: Dict[Tuple[str, ...], List[Dict[str, int]]] = {}

    def node_for(h: History) -> PublicState:
        node = nodes.get(h.public)
        if node is None:
            node = PublicState(public=h.public, num_players=n, terminal=h.terminal)
            node.private = [[] for _ in range(n)]
            node.actions = [[] for _ in range(n)]
            node.active = [[] for _ in range(n)]
            nodes[h.public] = node
            index[h.public] = [{} for _ in range(n)]
        elif node.terminal != h.terminal:
            raise GameError(f"public state {h.public_key()!r} mixes terminal and non-terminal histories")
        return node

    def private_index(node: PublicState, h: History, i: int) -> int:
        table = index[node.public][i]
        pkey = h.private_key(i)
        j = table.get(pkey)
        w = h.world
        legal = () if h.terminal else tuple(game.legal_actions(w, i))
        act = (not h.terminal) and i in game.active_players(w)
        if j is None:
            j = table[pkey] = len(node.private[i])
            node.private[i].append(pkey)
            node.actions[i].append(legal)
            node.active[i].append(act)
        elif not h.terminal and (node.actions[i][j] != legal or node.active[i][j] != act):
            raise GameError(f"legal actions differ within infostate {h.infostate_key(i)!r}")
        return j

    child_slots: Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], int] = {}
    stack = [initial_history(game)]
    root = node_for(stack[0])
    while stack:
        h = stack.pop()
        node = node_for(h)
        node.num_histories += 1
        profile = tuple(private_index(node, h, i) for i in range(n))
        if h.terminal:
            node.terminal_histories.append((profile, h.chance_reach, h.utility))
            continue
        succ = successors(game, h)
        for joint, child, _ in succ:
            cnode = node_for(child)
            slot_key = (node.public, child.public)
            slot = child_slots.get(slot_key)
            if slot is None:
                slot = child_slots[slot_key] = len(node.children)
                node.children.append(cnode)
                node.parent_index.append([[] for _ in range(n)])
                node.parent_action.append([[] for _ in range(n)])
            cprofile = tuple(private_index(cnode, child, i) for i in range(n))
            for i in range(n):
                pidx = node.parent_index[slot][i]
                pact = node.parent_action[slot][i]
                k = cprofile[i]
                a = node.actions[i][profile[i]].index(joint[i])
                while len(pidx) <= k:
                    pidx.append(-1)
                    pact.append(-1)
                if pidx[k] == -1:
                    pidx[k], pact[k] = profile[i], a
                elif (pidx[k], pact[k]) != (profile[i], a):
                    raise GameError(f"imperfect recall at {child.infostate_key(i)!r}")
        stack.extend(child for _, child, _ in reversed(succ))
    return root


# ---------------------------------------------------------------------------
# counts


@dataclass(frozen=True)
class GameCounts:
    num_histories: int
    num_terminals: int
    num_infostates: Tuple[int, ...]
    num_decision_infostates: Tuple[int, ...]
    num_public_states: int
    max_private_per_public: int

    @property
    def total_infostates(self) -> int:
        return sum(self.num_infostates)

    @property
    def total_decision_infostates(self) -> int:
        return sum(self.num_decision_infostates)


def enumerate_counts(game: Game) -> GameCounts:
    """Exhaustive counts from a plain history walk (no public tree involved)."""
    n = game.num_players
    infostates: List[set] = [set() for _ in range(n)]
    decision: List[set] = [set() for _ in range(n)]
    publics: Dict[str, List[set]] = {}
    num_h = num_z = 0
    for h in iter_histories(game):
        num_h += 1
        num_z += h.terminal
        pub = h.public_key()
        per_pub = publics.setdefault(pub, [set() for _ in range(n)])
        active = () if h.terminal else game.active_players(h.world)
        for i in range(n):
            key = h.infostate_key(i)
            infostates[i].add(key)
            per_pub[i].add(key)
            if i in active:
                decision[i].add(key)
    max_priv = max(len(s) for sets in publics.values() for s in sets)
    return GameCounts(
        num_histories=num_h,
        num_terminals=num_z,
        num_infostates=tuple(len(s) for s in infostates),
        num_decision_infostates=tuple(len(s) for s in decision),
        num_public_states=len(publics),
        max_private_per_public=max_priv,
    )


# ---------------------------------------------------------------------------
# sequential Bayesian game check


@dataclass(frozen=True)
class SbgReport:
    private_obs_only_initially: bool
    legal_actions_public: bool
    actions_public: bool
    witnesses: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.private_obs_only_initially and self.legal_actions_public and self.actions_public

    @property
    def failed_conditions(self) -> Tuple[str, ...]:
        names = ("i", "ii", "iii")
        flags = (self.private_obs_only_initially, self.legal_actions_public, self.actions_public)
        return tuple(n for n, ok in zip(names, flags) if not ok)

    def verdict(self) -> str:
        if self.passed:
            return "pass"
        return "fail(" + ",".join(self.failed_conditions) + ")"


def check_sbg(game: Game, histories: Optional[Sequence[History]] = None) -> SbgReport:
    """Check the three sequential-Bayesian-game conditions.

    ``histories`` may be supplied in any order; by default every history is
    enumerated.  The first counterexample found per condition is reported.
    """
    if histories is None:
        histories = list(iter_histories(game))
    n = game.num_players
    witnesses: Dict[str, str] = {}
    legal_by_public: Dict[Tuple[str, ...], Tuple[Tuple[str, ...], ...]] = {}
    for h in histories:
        if h.terminal:
            continue
        w = h.world
        legal = tuple(tuple(game.legal_actions(w, i)) for i in range(n))
        seen = legal_by_public.setdefault(h.public, legal)
        if seen != legal and "ii" not in witnesses:
            witnesses["ii"] = f"history {h.public_key()!r} at depth {h.depth}: {legal} vs {seen}"

        pubs_by_joint: Dict[JointAction, set] = {}
        for joint in joint_actions(game, w):
            for nxt, prob in game.transition(w, joint):
                if prob <= 0.0:
                    continue
                priv, pub = game.observe(w, joint, nxt)
                pubs_by_joint.setdefault(joint, set()).add(pub)
                if h.depth > 0 and len(set(priv)) > 1 and "i" not in witnesses:
                    witnesses["i"] = f"transition at depth {h.depth} from {h.public_key()!r} under {joint}: private {priv}"
        if "iii" not in witnesses:
            joints = list(pubs_by_joint)
            for a, b in itertools.combinations(joints, 2):
                if any(x != y for x, y in zip(a, b)) and pubs_by_joint[a] & pubs_by_joint[b]:
                    witnesses["iii"] = (
                        f"transition at depth {h.depth} from {h.public_key() or '<root>'!r}: "
                        f"actions {a} and {b} share public observation {sorted(pubs_by_joint[a] & pubs_by_joint[b])}"
                    )
                    break
    return SbgReport(
        private_obs_only_initially="i" not in witnesses,
        legal_actions_public="ii" not in witnesses,
        actions_public="iii" not in witnesses,
        witnesses=witnesses,
    )

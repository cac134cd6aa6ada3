"""Small hand-written games for corner cases not covered by the zoo."""

from pscfr.fosg import NOOP, Game
from pscfr.games.matrix import MatrixGame


class PerfectInfoTree(Game):
    """Three alternating binary moves, all public; P1 scores the number of 'a's, signed by parity."""

    name = "perfect_info"

    def initial_world(self):
        return ""

    def is_terminal(self, w):
        return len(w) == 3

    def active_players(self, w):
        return () if len(w) == 3 else (len(w) % 2,)

    def legal_actions(self, w, player):
        return ("a", "b") if player in self.active_players(w) else (NOOP,)

    def transition(self, w, joint):
        return [(w + "".join(joint), 1.0)]

    def observe(self, w, joint, nxt):
        return ("", ""), "".join(joint)

    def reward(self, w, joint, nxt):
        if len(nxt) < 3:
            return (0.0, 0.0)
        u = float(nxt.count("a")) * (1 if nxt[0] == nxt[2] else -1)
        return (u, -u)


class ThreePlayerPennies(Game):
    """Simultaneous binary choice for three players; odd one out wins."""

    num_players = 3
    name = "three_pennies"

    def initial_world(self):
        return ("move",)

    def is_terminal(self, w):
        return w[0] == "end"

    def active_players(self, w):
        return (0, 1, 2) if w[0] == "move" else ()

    def legal_actions(self, w, player):
        return ("h", "t") if w[0] == "move" else (NOOP,)

    def transition(self, w, joint):
        return [(("end",) + tuple(joint), 1.0)]

    def observe(self, w, joint, nxt):
        return ("", "", ""), "".join(joint)

    def reward(self, w, joint, nxt):
        if w[0] != "move":
            return (0.0, 0.0, 0.0)
        picks = nxt[1:]
        out = []
        for p in picks:
            out.append(2.0 if picks.count(p) == 1 else -1.0 if len(set(picks)) == 2 else 0.0)
        return tuple(out)


class Coordination(MatrixGame):
    """Both players receive the same payoff."""

    def __init__(self):
        super().__init__(((1, 0), (0, 1)), ("A", "B"), ("a", "b"), name="coordination")

    def reward(self, w, joint, nxt):
        u = self.utility(nxt[1], nxt[2])
        return (u, u)

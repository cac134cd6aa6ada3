"""Game identifier grammar and the game factory.

    kuhn | leduc | rps_efg | rps_nfg | mp_seq | mp_sb
    liars_dice:d=<int>,f=<int>
    river:deck=<int>,hand=<1|2>,pot=<int>,stack=<int>,abs=<subset of f,c,p,a>
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from ..fosg import Game
from .river import ACTION_ORDER, ConfigError, RiverConfig, RiverGame

SIMPLE = ("kuhn", "leduc", "rps_efg", "rps_nfg", "mp_seq", "mp_sb")
PARAMS: Dict[str, Tuple[str, ...]] = {
    "liars_dice": ("d", "f"),
    "river": ("deck", "hand", "pot", "stack", "abs"),
}


class SpecError(ValueError):
    """Unparseable game identifier; ``position`` is the offending character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class GameSpec:
    name: str
    params: Tuple[Tuple[str, str], ...] = ()

    def param(self, key: str) -> str:
        return dict(self.params)[key]

    def render(self) -> str:
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(f"{k}={v}" for k, v in self.params)

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "GameSpec":
        name, sep, rest = text.partition(":")
        if name in SIMPLE:
            if sep:
                raise SpecError(f"game {name!r} takes no parameters", len(name))
            return cls(name)
        if name not in PARAMS:
            raise SpecError(f"unknown game {name!r}", 0)
        if not sep:
            raise SpecError(f"game {name!r} needs parameters {','.join(PARAMS[name])}", len(name))
        found: Dict[str, str] = {}
        pos = len(name) + 1
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq or not value:
                raise SpecError(f"expected key=value, got {item!r}", pos)
            if key not in PARAMS[name]:
                raise SpecError(f"unknown parameter {key!r} for {name}", pos)
            if key in found:
                raise SpecError(f"duplicate parameter {key!r}", pos)
            if key == "abs":
                if any(ch not in ACTION_ORDER for ch in value):
                    raise SpecError(f"abstraction {value!r} must use letters from 'fcpa'", pos + len(key) + 1)
                value = "".join(ch for ch in ACTION_ORDER if ch in value)
            elif not value.isdigit():
                raise SpecError(f"parameter {key!r} must be a non-negative integer", pos + len(key) + 1)
            else:
                value = str(int(value))
            found[key] = value
            pos += len(item) + 1
        missing = [k for k in PARAMS[name] if k not in found]
        if missing:
            raise SpecError(f"missing parameter(s) {','.join(missing)}", len(text))
        return cls(name, tuple((k, found[k]) for k in PARAMS[name]))


def make_game(spec) -> Game:
    """Build a game from a :class:`GameSpec` or its string form."""
    from . import kuhn, leduc, liars_dice, matrix
    from ..transform import sb_transform

    if isinstance(spec, str):
        spec = GameSpec.parse(spec)
    name = spec.name
    if name == "kuhn":
        return kuhn.KuhnPoker()
    if name == "leduc":
        return leduc.LeducPoker()
    if name == "rps_efg":
        return matrix.rps_efg()
    if name == "rps_nfg":
        return matrix.rps_nfg()
    if name == "mp_seq":
        return matrix.mp_seq()
    if name == "mp_sb":
        game = sb_transform(matrix.matching_pennies())
        game.name = "mp_sb"
        return game
    if name == "liars_dice":
        d, f = int(spec.param("d")), int(spec.param("f"))
        try:
            return liars_dice.LiarsDice(d, f)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if name == "river":
        config = RiverConfig.reduced(
            int(spec.param("deck")),
            hand_size=int(spec.param("hand")),
            pot=int(spec.param("pot")),
            stack=int(spec.param("stack")),
            abstraction=spec.param("abs"),
        )
        return RiverGame(config, name=spec.render())
    raise SpecError(f"unknown game {name!r}", 0)


ZOO = (
    "kuhn",
    "leduc",
    "rps_efg",
    "rps_nfg",
    "mp_seq",
    "mp_sb",
    "liars_dice:d=1,f=4",
    "river:deck=12,hand=1,pot=200,stack=1000,abs=fcpa",
)

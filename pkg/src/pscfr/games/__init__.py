from .river import ConfigError, RiverConfig, RiverGame, hand_rank
from .spec import ZOO, GameSpec, SpecError, make_game

__all__ = ["ConfigError", "GameSpec", "RiverConfig", "RiverGame", "SpecError", "ZOO", "hand_rank", "make_game"]

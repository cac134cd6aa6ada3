import functools

import pytest
from hypothesis import HealthCheck, settings

from pscfr.games import make_game

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

RIVER20 = "river:deck=20,hand=1,pot=200,stack=1000,abs=fcpa"


@functools.lru_cache(maxsize=None)
def game(spec: str):
    """Games are immutable, so tests share one instance per spec."""
    return make_game(spec)


@pytest.fixture
def kuhn():
    return game("kuhn")

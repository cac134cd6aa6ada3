import functools
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pscfr.evaluation import (CSV_HEADER, RunRecord, best_response_value, expected_values, exploitability,
                              is_two_player_zero_sum, strategy_distance)
from pscfr.fosg import UnsupportedGameError, initial_history, iter_histories
from pscfr.games.matrix import matching_pennies

from conftest import game
from oracles import subtree_value
from toy_games import Coordination, ThreePlayerPennies


@functools.lru_cache(maxsize=None)
def _decision_keys(g, player):
    keys = {}
    for h in iter_histories(g):
        if not h.terminal and player in g.active_players(h.world):
            keys[h.infostate_key(player)] = tuple(g.legal_actions(h.world, player))
    return keys


def _kuhn_equilibrium(alpha):
    """One member of the known Kuhn equilibrium family, parametrised by the jack bluff rate."""
    p = {}

    def put(key, bet):
        p[key] = {"p": 1.0 - bet, "b": bet}

    put("1:.J|start", alpha)
    put("1:.Q|start", 0.0)
    put("1:.K|start", 3 * alpha)
    put("1:.J/p/-|start/p/b", 0.0)
    put("1:.Q/p/-|start/p/b", alpha + 1 / 3)
    put("1:.K/p/-|start/p/b", 1.0)
    put("2:.J/-|start/p", 1 / 3)
    put("2:.Q/-|start/p", 0.0)
    put("2:.K/-|start/p", 1.0)
    put("2:.J/-|start/b", 0.0)
    put("2:.Q/-|start/b", 1 / 3)
    put("2:.K/-|start/b", 1.0)
    return p


def test_kuhn_equilibrium_keys_are_real(kuhn):
    assert set(_kuhn_equilibrium(0.0)) == set(_decision_keys(kuhn, 0)) | set(_decision_keys(kuhn, 1))


@pytest.mark.parametrize("alpha", [0.0, 0.1, 1 / 3])
def test_kuhn_equilibrium_has_zero_exploitability(kuhn, alpha):
    profile = _kuhn_equilibrium(alpha)
    assert expected_values(kuhn, profile)[0] == pytest.approx(-1 / 18, abs=1e-12)
    assert exploitability(kuhn, profile) == pytest.approx(0.0, abs=1e-12)


def _random_profile(g, rng):
    out = {}
    for i in range(g.num_players):
        for key, acts in _decision_keys(g, i).items():
            w = rng.random(len(acts)) + 1e-3
            out[key] = dict(zip(acts, (w / w.sum()).tolist()))
    return out


@pytest.mark.parametrize("spec", ["kuhn", "rps_efg", "mp_seq", "mp_sb", "rps_nfg"])
def test_expected_values_match_recursion(spec):
    g = game(spec)
    prof = _random_profile(g, np.random.default_rng(3))
    ref = subtree_value(g, prof, initial_history(g))
    assert expected_values(g, prof) == pytest.approx(ref, abs=1e-12)


@pytest.mark.parametrize("spec,player", [("kuhn", 0), ("kuhn", 1), ("mp_seq", 1), ("rps_efg", 0)])
def test_best_response_matches_pure_strategy_enumeration(spec, player):
    g = game(spec)
    rng = np.random.default_rng(11)
    prof = _random_profile(g, rng)
    keys = _decision_keys(g, player)
    best = -np.inf
    for choice in itertools.product(*keys.values()):
        trial = dict(prof)
        for (key, acts), a in zip(keys.items(), choice):
            trial[key] = {b: float(b == a) for b in acts}
        best = max(best, subtree_value(g, trial, initial_history(g))[player])
    br = best_response_value(g, prof, player)
    assert br.value == pytest.approx(best, abs=1e-12)
    trial = dict(prof)
    trial.update(br.policy)
    assert subtree_value(g, trial, initial_history(g))[player] == pytest.approx(best, abs=1e-12)


def test_rock_against_uniform_scores_zero():
    g = game("rps_nfg")
    prof = {}
    for i in range(2):
        for key, acts in _decision_keys(g, i).items():
            prof[key] = {a: (1.0 if a == acts[0] else 0.0) if i == 0 else 1 / 3 for a in acts}
    assert expected_values(g, prof) == pytest.approx([0.0, 0.0], abs=1e-15)


def test_matching_pennies_best_responses():
    g = matching_pennies()
    assert exploitability(g, {}) == pytest.approx(0.0, abs=1e-15)
    (k1, a1), = _decision_keys(g, 0).items()
    heads = {k1: {a: float(a == a1[0]) for a in a1}}
    assert best_response_value(g, heads, 1).value == pytest.approx(1.0)
    assert best_response_value(g, heads, 0).value == pytest.approx(0.0)
    assert exploitability(g, heads) == pytest.approx(0.5)


@pytest.mark.parametrize("spec", ["kuhn", "leduc", "mp_seq", "liars_dice:d=1,f=4"])
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_exploitability_nonnegative_and_br_dominates(spec, seed):
    g = game(spec)
    prof = _random_profile(g, np.random.default_rng(seed))
    ev = expected_values(g, prof)
    for i in range(2):
        assert best_response_value(g, prof, i).value >= ev[i] - 1e-12
    assert exploitability(g, prof) >= -1e-12


def test_missing_infostates_default_to_uniform(kuhn):
    uniform = {k: {a: 1 / len(acts) for a in acts} for i in range(2) for k, acts in _decision_keys(kuhn, i).items()}
    assert exploitability(kuhn, {}) == pytest.approx(exploitability(kuhn, uniform), abs=1e-15)


def test_unsupported_games():
    with pytest.raises(UnsupportedGameError):
        exploitability(ThreePlayerPennies(), {})
    with pytest.raises(UnsupportedGameError):
        best_response_value(ThreePlayerPennies(), {}, 0)
    assert not is_two_player_zero_sum(Coordination())
    with pytest.raises(UnsupportedGameError):
        exploitability(Coordination(), {})
    assert is_two_player_zero_sum(game("kuhn"))


def test_three_player_expected_values_still_defined():
    ev = expected_values(ThreePlayerPennies(), {})
    # odd one out in 2 of 8 outcomes (+2), in the majority of a split in 4 of 8 (-1)
    assert ev == pytest.approx([(2 * 2 - 4 * 1) / 8] * 3, abs=1e-15)


def test_strategy_distance():
    pure = {"k": {"x": 1.0, "y": 0.0}}
    half = {"k": {"x": 0.5, "y": 0.5}}
    assert strategy_distance(pure, half) == 0.5
    assert strategy_distance(pure, {}) == 0.5
    assert strategy_distance(half, {}) == 0.0
    assert strategy_distance(pure, pure) == 0.0


def test_run_record_csv_round_trip():
    rec = RunRecord()
    rec.add(1, "vanilla", 0.25, 10, 1.5)
    rec.add(2, "vanilla", None, 20, 3.0)
    rec.add(2, "ps", 1e-17, 8, 0.75)
    text = rec.to_csv()
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    back = RunRecord.from_csv(text)
    assert back.to_csv() == text
    assert [r.exploitability for r in back.sampled("vanilla")] == [0.25]
    assert RunRecord.from_csv(rec.to_csv(include_wall=False)).rows[0].wall_ms == 0.0
    with pytest.raises(ValueError):
        RunRecord.from_csv("a,b\n")

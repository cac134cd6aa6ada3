import pytest

from pscfr.cfr import CFRSolver, VanillaCFR, hist_regret_update
from pscfr.evaluation import expected_values
from pscfr.fosg import enumerate_counts, initial_history, iter_histories, successors

from conftest import game
from oracles import reference_cfr

SMALL = ("kuhn", "rps_efg", "rps_nfg", "mp_seq", "mp_sb")


def _kuhn_history(kuhn, cards, bets):
    h = next(c for _, c, _ in successors(kuhn, initial_history(kuhn)) if c.world[:2] == cards)
    for b in bets:
        h = next(c for j, c, _ in successors(kuhn, h) if b in j)
    return h


def test_check_check_terminal_value(kuhn):
    z = _kuhn_history(kuhn, ("K", "Q"), "pp")
    # chance 1/6, opponent reach 1/2, K wins 1
    v = hist_regret_update(VanillaCFR(kuhn), z, [0.5, 0.5])
    assert v == pytest.approx([1 / 12, -1 / 12], abs=1e-15)


def test_value_below_a_history_under_uniform_play(kuhn):
    h = _kuhn_history(kuhn, ("K", "Q"), "p")
    v = hist_regret_update(VanillaCFR(kuhn), h, [1.0, 1.0])
    # P2 checks (+1) or bets; P1 then folds (-1) or calls (+2): 1/6 * (1/2 + 1/2 * 1/2)
    assert v[0] == pytest.approx((0.5 * 1 + 0.5 * (0.5 * -1 + 0.5 * 2)) / 6, abs=1e-15)


def test_rps_root_values_vanish_under_uniform():
    assert hist_regret_update(VanillaCFR(game("rps_efg"))) == pytest.approx([0.0, 0.0], abs=1e-15)


@pytest.mark.parametrize("spec", SMALL + ("leduc",))
def test_root_values_equal_expected_utility(spec):
    g = game(spec)
    eng = VanillaCFR(g)
    for _ in range(3):
        v = eng.regret_update()
        ev = expected_values(g, eng.current_policy())
        assert v == pytest.approx(list(ev), abs=1e-12)
        eng.accumulate()
        eng.regret_matching()


@pytest.mark.parametrize("spec", SMALL)
def test_regrets_and_average_match_brute_force(spec):
    g = game(spec)
    regrets, avg = reference_cfr(g, 4)
    solver = CFRSolver(g, "vanilla")
    for _ in range(4):
        solver.step()
    table = solver.engine.regret_table()
    assert set(table) == set(regrets)
    for key in regrets:
        assert table[key] == pytest.approx(regrets[key], abs=1e-12)
        assert solver.average_policy()[key] == pytest.approx(avg[key], abs=1e-12)


@pytest.mark.parametrize("spec", ("kuhn", "rps_nfg", "liars_dice:d=1,f=4"))
def test_every_history_touched_once_per_iteration(spec):
    g = game(spec)
    solver = CFRSolver(g, "vanilla")
    solver.step()
    solver.step()
    assert solver.counters.histories_touched == 2 * enumerate_counts(g).num_histories


def test_value_updates_count_players_per_history(kuhn):
    eng = VanillaCFR(kuhn)
    eng.regret_update()
    hs = list(iter_histories(kuhn))
    assert eng.counters.infostate_value_updates == 2 * len(hs)
    assert eng.counters.infostate_action_updates == 2 * (len(hs) - 1)


@pytest.mark.parametrize("spec", ("kuhn", "leduc", "mp_sb"))
def test_lazy_matches_materialised_tree(spec):
    g = game(spec)
    a, b = CFRSolver(g, "vanilla"), CFRSolver(g, "vanilla-lazy")
    for _ in range(5):
        a.step()
        b.step()
    assert a.engine.regret_table() == b.engine.regret_table()
    assert a.average_policy() == b.average_policy()
    ca, cb = a.counters.as_dict(), b.counters.as_dict()
    ca.pop("wall_nanoseconds")
    cb.pop("wall_nanoseconds")
    assert ca == cb


def test_memory_entries(kuhn):
    m = VanillaCFR(kuhn).memory_entries()
    assert m["tree_nodes"] == 55
    # 12 infostates with 2 actions: regrets, policy, average plus one normaliser each
    assert m["table_entries"] == 12 * (3 * 2 + 1)

import numpy as np
import pytest

from pscfr.cfr import ALGORITHMS, CFRSolver, cfr_solve, default_cadence, make_engine
from pscfr.evaluation import RunRecord, expected_values, exploitability, strategy_distance
from pscfr.games import ZOO

from conftest import game
from oracles import own_reach


def test_one_iteration_averages_to_uniform(kuhn):
    avg = cfr_solve(kuhn, "vanilla", 1)
    assert all(p == pytest.approx(0.5) for row in avg.values() for p in row.values())


def test_average_recomputed_from_logged_iterates(kuhn):
    logged = []
    solver = CFRSolver(kuhn, "ps")
    for _ in range(1000):
        logged.append(solver.current_policy())
        solver.step()
    num, den = {}, {}
    for pi in logged:
        reach = own_reach(kuhn, pi)
        for key, row in pi.items():
            w = reach.get(key, 0.0)
            den[key] = den.get(key, 0.0) + w
            acc = num.setdefault(key, dict.fromkeys(row, 0.0))
            for a, p in row.items():
                acc[a] += w * p
    ref = {k: {a: x / den[k] for a, x in row.items()} for k, row in num.items()}
    avg = solver.average_policy()
    assert strategy_distance(avg, ref) <= 1e-12
    assert exploitability(kuhn, avg) == pytest.approx(exploitability(kuhn, ref), abs=1e-12)


@pytest.mark.parametrize("spec", ["kuhn", "leduc"])
def test_positive_regret_grows_sublinearly(spec):
    solver = CFRSolver(game(spec), "ps")

    def worst():
        return max(max(max(v, 0.0) for v in row.values()) for row in solver.engine.regret_table().values())

    for _ in range(256):
        solver.step()
    early = worst() / 256
    for _ in range(4096 - 256):
        solver.step()
    assert worst() / 4096 <= 0.5 * early


@pytest.mark.parametrize("spec", ZOO)
def test_equivalence_over_two_hundred_iterations(spec):
    g = game(spec)
    a, b = CFRSolver(g, "vanilla"), CFRSolver(g, "ps")
    every = 50 if spec.startswith("river") else 10
    for t in range(1, 201):
        a.step()
        b.step()
        if t % every == 0:
            pa, pb = a.average_policy(), b.average_policy()
            assert strategy_distance(pa, pb) <= 1e-9
            assert abs(exploitability(g, pa) - exploitability(g, pb)) <= 1e-9


@pytest.mark.parametrize("spec", ["kuhn", "mp_sb"])
def test_uniform_averaging_also_agrees(spec):
    g = game(spec)
    x = cfr_solve(g, "vanilla", 50, averaging="uniform")
    y = cfr_solve(g, "ps", 50, averaging="uniform")
    assert strategy_distance(x, y) <= 1e-9


def test_sb_matching_pennies_value():
    g = game("mp_sb")
    avg = cfr_solve(g, "vanilla", 1000)
    assert abs(expected_values(g, avg)[0]) <= 1e-3


def test_record_rows_and_cadence(kuhn):
    rec = RunRecord()
    cfr_solve(kuhn, "vanilla", 10, record=rec, exploitability_every=4)
    assert [r.iteration for r in rec.rows] == list(range(1, 11))
    assert [r.iteration for r in rec.sampled()] == [4, 8, 10]
    updates = [r.value_updates_cum for r in rec.rows]
    assert updates == sorted(updates) and len(set(np.diff(updates))) == 1


def test_exploitability_decreases_over_a_run(kuhn):
    rec = RunRecord()
    cfr_solve(kuhn, "ps", 512, record=rec)
    sampled = [r.exploitability for r in rec.sampled()]
    assert len(sampled) == 64
    assert sampled[-1] < 0.1 * sampled[0]


def test_default_cadence():
    assert default_cadence(1) == 1
    assert default_cadence(64) == 1
    assert default_cadence(65) == 2
    assert default_cadence(10000) == 157


def test_argument_validation(kuhn):
    with pytest.raises(ValueError):
        cfr_solve(kuhn, "vanilla", 0)
    with pytest.raises(ValueError):
        make_engine(kuhn, "cfr+")
    with pytest.raises(ValueError):
        make_engine(kuhn, "ps", averaging="linear")
    assert set(ALGORITHMS) == {"vanilla", "vanilla-lazy", "ps", "ps-domain"}

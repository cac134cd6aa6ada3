import warnings

from pscfr.evaluation import RunRecord
from pscfr.plotting import plot_convergence, plot_iteration_time, plot_updates_per_iteration


def _record(expl):
    rec = RunRecord()
    for t, e in enumerate(expl, 1):
        rec.add(t, "vanilla", e, 10 * t, 0.0)
        rec.add(t, "ps", e, 4 * t, 0.0)
    return rec


def test_svg_output_is_reproducible(tmp_path):
    rec = _record([0.5, 0.2, 0.1])
    plot_convergence(rec, tmp_path / "a.svg", "kuhn")
    plot_convergence(rec, tmp_path / "b.svg", "kuhn")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_zero_exploitability_plots_without_warnings(tmp_path):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        plot_convergence(_record([0.0, 0.0]), tmp_path / "c.svg")
    assert (tmp_path / "c.svg").stat().st_size > 0


def test_bar_charts(tmp_path):
    plot_updates_per_iteration({"vanilla": 1000.0, "ps": 50.0}, tmp_path / "u.svg")
    plot_iteration_time({"vanilla": 2.0, "ps": 0.1}, tmp_path / "t.svg")
    assert (tmp_path / "u.svg").exists() and (tmp_path / "t.svg").exists()

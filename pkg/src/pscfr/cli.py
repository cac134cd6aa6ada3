"""Command-line front end.

    pscfr info --game kuhn
    pscfr solve --game kuhn --algo ps --iters 10000 --strategy kuhn.tsv --csv kuhn.csv
    pscfr compare --game leduc --iters 100
    pscfr bench --game river:deck=20,hand=1,pot=200,stack=1000,abs=fcpa --iters 200 --out-dir out
    pscfr check-sbg --game mp_seq
    pscfr transform --game mp --out mp_sb.json

Exit codes: 0 success, 1 usage or configuration error, 2 when ``compare``
finds the solvers further apart than the tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .cfr import ALGORITHMS, CFRSolver, default_cadence
from .evaluation import (RunRecord, expected_values, exploitability, is_two_player_zero_sum,
                         strategy_distance)
from .fosg import GameError, check_sbg, enumerate_counts
from .games import ConfigError, SpecError, make_game
from .io import write_strategy

EXIT_USAGE = 1
EXIT_THRESHOLD = 2
BYTES_PER_ENTRY = 8
TRANSFORMABLE = ("mp", "rps")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _game(spec: str):
    try:
        return make_game(spec)
    except (SpecError, ConfigError) as exc:
        raise UsageError(f"bad game {spec!r}: {exc}") from None


def _algos(text: str) -> List[str]:
    names = [a for a in text.split(",") if a]
    if not names:
        raise UsageError("no algorithm given")
    for a in names:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    if len(set(names)) != len(names):
        raise UsageError("duplicate algorithm")
    return names


def _check_pairing(game, algos: Sequence[str]) -> None:
    from .games.river import RiverGame

    if "ps-domain" in algos and not isinstance(game, RiverGame):
        raise UsageError("ps-domain needs a river game; use ps for other games")


def _check_writable(path: Optional[str]) -> None:
    if path is None:
        return
    parent = Path(path).resolve().parent
    if not parent.is_dir():
        raise UsageError(f"directory {str(parent)!r} does not exist")
    if not os.access(parent, os.W_OK):
        raise UsageError(f"directory {str(parent)!r} is not writable")
    if Path(path).is_dir():
        raise UsageError(f"{path!r} is a directory")


def _run(game, algo: str, iters: int, every: int, record: RunRecord, averaging: str = "reach",
         zero_sum: bool = True) -> CFRSolver:
    solver = CFRSolver(game, algo, averaging)
    for t in range(1, iters + 1):
        solver.step()
        expl = None
        if zero_sum and (t % every == 0 or t == iters):
            expl = exploitability(game, solver.average_policy())
        record.add(t, algo, expl, solver.counters.value_updates, solver.counters.wall_nanoseconds / 1e6)
    return solver


# -- commands


def cmd_info(args) -> int:
    game = _game(args.game)
    counts = enumerate_counts(game)
    report = check_sbg(game)
    print(f"game: {args.game}")
    print(f"histories: {counts.num_histories}")
    print(f"terminal histories: {counts.num_terminals}")
    for i, (s, d) in enumerate(zip(counts.num_infostates, counts.num_decision_infostates)):
        print(f"player {i + 1} infostates: {s} (decision: {d})")
    print(f"decision infostates: {counts.total_decision_infostates}")
    print(f"public states: {counts.num_public_states}")
    print(f"max private infostates per public state: {counts.max_private_per_public}")
    print(f"SBG: {report.verdict()}")
    return 0


def cmd_check_sbg(args) -> int:
    game = _game(args.game)
    report = check_sbg(game)
    labels = {
        "i": ("private observations only at the initial step", report.private_obs_only_initially),
        "ii": ("legal actions determined by the public state", report.legal_actions_public),
        "iii": ("actions revealed by public observations", report.actions_public),
    }
    for cond, (text, ok) in labels.items():
        line = f"({cond}) {text}: {'pass' if ok else 'fail'}"
        if not ok and cond in report.witnesses:
            line += f"  witness: {report.witnesses[cond]}"
        print(line)
    print(f"SBG: {report.verdict()}")
    return 0


def cmd_solve(args) -> int:
    game = _game(args.game)
    algo = _algos(args.algo)
    if len(algo) != 1:
        raise UsageError("solve takes exactly one algorithm")
    algo = algo[0]
    _check_pairing(game, [algo])
    _check_writable(args.strategy)
    _check_writable(args.csv)
    every = args.every or default_cadence(args.iters)
    zero_sum = is_two_player_zero_sum(game)
    record = RunRecord()
    solver = _run(game, algo, args.iters, every, record, args.averaging, zero_sum)
    policy = solver.average_policy()
    if args.strategy:
        write_strategy(args.strategy, policy)
    if args.csv:
        Path(args.csv).write_text(record.to_csv(include_wall=not args.no_timing), encoding="utf-8")
    c = solver.counters
    values = expected_values(game, policy)
    print(f"game: {args.game}  algo: {algo}  iterations: {args.iters}")
    if zero_sum:
        print(f"exploitability: {record.rows[-1].exploitability:.6g}")
    print("values: " + " ".join(f"{v:.6f}" for v in values))
    print(f"histories touched: {c.histories_touched}")
    print(f"value updates: {c.value_updates} (infostate {c.infostate_value_updates}, "
          f"infostate-action {c.infostate_action_updates})")
    print(f"terminal evaluation ops: {c.terminal_eval_ops}")
    if not args.no_timing:
        print(f"setup: {solver.setup_nanoseconds / 1e6:.1f} ms  "
              f"per iteration: {c.wall_nanoseconds / 1e6 / args.iters:.3f} ms")
    return 0


def cmd_compare(args) -> int:
    game = _game(args.game)
    every = args.every
    zero_sum = is_two_player_zero_sum(game)
    record = RunRecord()
    policies = {}
    for algo in ("vanilla", "ps"):
        policies[algo] = _run(game, algo, args.iters, every, record, zero_sum=zero_sum).average_policy()
    distance = strategy_distance(policies["vanilla"], policies["ps"])
    gap = 0.0
    if zero_sum:
        a = {r.iteration: r.exploitability for r in record.sampled("vanilla")}
        b = {r.iteration: r.exploitability for r in record.sampled("ps")}
        gap = max(abs(a[t] - b[t]) for t in a)
    print(f"game: {args.game}  iterations: {args.iters}")
    print(f"max strategy distance: {distance:.3e}")
    if zero_sum:
        print(f"max exploitability gap: {gap:.3e} over {len(a)} samples")
    ok = distance <= args.tolerance and gap <= args.tolerance
    print("equivalent" if ok else f"NOT equivalent (tolerance {args.tolerance:g})")
    return 0 if ok else EXIT_THRESHOLD


def cmd_bench(args) -> int:
    game = _game(args.game)
    algos = _algos(args.algos)
    _check_pairing(game, algos)
    out = Path(args.out_dir)
    if out.exists() and not out.is_dir():
        raise UsageError(f"{args.out_dir!r} is not a directory")
    existing = out
    while not existing.exists():
        existing = existing.parent
    if not os.access(existing, os.W_OK):
        raise UsageError(f"directory {str(existing)!r} is not writable")
    every = args.every or default_cadence(args.iters)
    zero_sum = is_two_player_zero_sum(game)

    from .plotting import plot_convergence, plot_iteration_time, plot_updates_per_iteration

    record = RunRecord()
    summary = []
    for algo in algos:
        solver = _run(game, algo, args.iters, every, record, zero_sum=zero_sum)
        c = solver.counters
        mem = solver.engine.memory_entries()
        entries = sum(mem.values())
        expl = record.for_algo(algo)[-1].exploitability
        summary.append({
            "algo": algo,
            "setup_ms": solver.setup_nanoseconds / 1e6,
            "total_ms": (solver.setup_nanoseconds + c.wall_nanoseconds) / 1e6,
            "per_iter_ms": c.wall_nanoseconds / 1e6 / args.iters,
            "memory_entries": entries,
            "memory_bytes_est": entries * BYTES_PER_ENTRY,
            "value_updates_per_iter": c.value_updates // args.iters,
            "terminal_ops_per_iter": c.terminal_eval_ops // args.iters,
            "final_exploitability": expl,
        })
        del solver

    out.mkdir(parents=True, exist_ok=True)
    (out / "runs.csv").write_text(record.to_csv(include_wall=not args.no_timing), encoding="utf-8")
    buf = io.StringIO()
    fields = list(summary[0])
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in summary:
        row = dict(row)
        for key in ("setup_ms", "total_ms", "per_iter_ms"):
            row[key] = "" if args.no_timing else f"{row[key]:.3f}"
        row["final_exploitability"] = "" if row["final_exploitability"] is None else repr(row["final_exploitability"])
        writer.writerow(row)
    (out / "timing.csv").write_text(buf.getvalue(), encoding="utf-8")
    title = args.game if len(args.game) < 48 else args.game[:45] + "..."
    if zero_sum:
        plot_convergence(record, out / "convergence.svg", title)
    plot_updates_per_iteration({r["algo"]: r["value_updates_per_iter"] for r in summary}, out / "updates.svg", title)
    if not args.no_timing:
        plot_iteration_time({r["algo"]: r["per_iter_ms"] for r in summary}, out / "timing.svg", title)

    header = f"{'algo':<12}{'setup ms':>12}{'total ms':>12}{'ms/iter':>12}{'mem est':>12}{'updates/it':>12}{'expl':>12}"
    print(header)
    for r in summary:
        timing = ("", "", "") if args.no_timing else (f"{r['setup_ms']:.1f}", f"{r['total_ms']:.1f}", f"{r['per_iter_ms']:.3f}")
        expl = "" if r["final_exploitability"] is None else f"{r['final_exploitability']:.3g}"
        print(f"{r['algo']:<12}{timing[0]:>12}{timing[1]:>12}{timing[2]:>12}"
              f"{_human_bytes(r['memory_bytes_est']):>12}{r['value_updates_per_iter']:>12}{expl:>12}")
    base = summary[0]
    for r in summary[1:]:
        ratio = base["value_updates_per_iter"] / max(r["value_updates_per_iter"], 1)
        line = f"{base['algo']}/{r['algo']}: value updates x{ratio:.2f}"
        if not args.no_timing:
            line += f", time per iteration x{base['per_iter_ms'] / r['per_iter_ms']:.2f}"
        print(line)
    print(f"wrote {out}")
    return 0


def _human_bytes(n: int) -> str:
    for unit in ("B", "KB", "MB", "GB"):
        if n < 1024 or unit == "GB":
            return f"{n:.0f} {unit}" if unit == "B" else f"{n:.1f} {unit}"
        n /= 1024
    return str(n)


def cmd_transform(args) -> int:
    from .games import matrix
    from .transform import sb_transform

    if args.game not in TRANSFORMABLE:
        raise UsageError(f"unsupported game {args.game!r}; choose from {', '.join(TRANSFORMABLE)}")
    _check_writable(args.out)
    base = matrix.matching_pennies() if args.game == "mp" else matrix.rps_nfg()
    game = sb_transform(base)
    report = check_sbg(game)
    record = RunRecord()
    policy = _run(game, "ps", args.iters, args.iters, record).average_policy()
    value = float(expected_values(game, policy)[0])
    expl = record.rows[-1].exploitability
    base_policy = _run(base, "vanilla", args.iters, args.iters, RunRecord()).average_policy()
    base_value = float(expected_values(base, base_policy)[0])
    description = game.describe()
    description["sbg"] = report.verdict()
    Path(args.out).write_text(json.dumps(description, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"transformed {base.name} -> {game.name}, wrote {args.out}")
    print(f"SBG: {report.verdict()}")
    print(f"value after {args.iters} iterations: {value:.6f} (exploitability {expl:.3g})")
    print(f"matrix game value: {base_value:.6f}  difference: {abs(value - base_value):.3e}")
    return 0 if report.passed else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pscfr", description="Vanilla and public-state CFR over factored-observation games.",
                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_, allow_abbrev=False)
        p.set_defaults(func=func)
        return p

    p = add("info", cmd_info, "print tree sizes and the SBG verdict of a game")
    p.add_argument("--game", required=True)

    p = add("check-sbg", cmd_check_sbg, "check the three sequential Bayesian game conditions")
    p.add_argument("--game", required=True)

    p = add("solve", cmd_solve, "run CFR and write the average strategy")
    p.add_argument("--game", required=True)
    p.add_argument("--algo", required=True, help=", ".join(ALGORITHMS))
    p.add_argument("--iters", type=_positive, required=True)
    p.add_argument("--every", type=_positive, help="exploitability cadence (default: iters/64)")
    p.add_argument("--averaging", choices=("reach", "uniform"), default="reach")
    p.add_argument("--strategy", help="strategy file to write")
    p.add_argument("--csv", help="per-iteration CSV to write")
    p.add_argument("--no-timing", action="store_true", help="leave wall-clock columns empty")

    p = add("compare", cmd_compare, "check that vanilla and public-state CFR agree")
    p.add_argument("--game", required=True)
    p.add_argument("--iters", type=_positive, required=True)
    p.add_argument("--every", type=_positive, default=1)
    p.add_argument("--tolerance", type=float, default=1e-9)

    p = add("bench", cmd_bench, "time solvers and plot convergence")
    p.add_argument("--game", required=True)
    p.add_argument("--algos", default="vanilla,ps")
    p.add_argument("--iters", type=_positive, required=True)
    p.add_argument("--every", type=_positive)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-timing", action="store_true", help="leave wall-clock columns empty")

    p = add("transform", cmd_transform, "write the SB form of a matrix game and check it")
    p.add_argument("--game", required=True, help=" | ".join(TRANSFORMABLE))
    p.add_argument("--out", required=True)
    p.add_argument("--iters", type=_positive, default=1000)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"pscfr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GameError as exc:
        print(f"pscfr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

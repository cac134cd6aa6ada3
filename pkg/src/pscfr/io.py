"""Strategy files: ``key<TAB>action<TAB>probability`` per line."""

from __future__ import annotations

from pathlib import Path
from typing import Dict, Union

Policy = Dict[str, Dict[str, float]]

SUM_TOLERANCE = 1e-9


class StrategyFormatError(ValueError):
    pass


def format_strategy(policy: Policy) -> str:
    lines = []
    for key in sorted(policy):
        for action in sorted(policy[key]):
            lines.append(f"{key}\t{action}\t{policy[key][action]:.12g}")
    return "".join(line + "\n" for line in lines)


def parse_strategy(text: str) -> Policy:
    policy: Policy = {}
    for n, line in enumerate(text.splitlines(), 1):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise StrategyFormatError(f"line {n}: expected 3 tab-separated fields, got {len(parts)}")
        key, action, prob = parts
        try:
            p = float(prob)
        except ValueError:
            raise StrategyFormatError(f"line {n}: bad probability {prob!r}") from None
        if not 0.0 <= p <= 1.0:
            raise StrategyFormatError(f"line {n}: probability {p} outside [0, 1]")
        row = policy.setdefault(key, {})
        if action in row:
            raise StrategyFormatError(f"line {n}: duplicate action {action!r} at {key!r}")
        row[action] = p
    for key, row in policy.items():
        if abs(sum(row.values()) - 1.0) > SUM_TOLERANCE:
            raise StrategyFormatError(f"probabilities at {key!r} sum to {sum(row.values())!r}")
    return policy


def write_strategy(path: Union[str, Path], policy: Policy) -> None:
    Path(path).write_text(format_strategy(policy), encoding="utf-8")


def read_strategy(path: Union[str, Path]) -> Policy:
    return parse_strategy(Path(path).read_text(encoding="utf-8"))

from .poker_eval import LinearTerminalPlan, PokerTerminal, terminal_eval_poker_linear
from .public import PublicStateCFR, build_chwu, ps_regret_update, terminal_eval_generic
from .solver import ALGORITHMS, CFRSolver, cfr_solve, default_cadence, make_engine
from .tables import (AverageAccumulator, Counters, Policy, extract_average, regret_matching,
                     uniform_policy, update_average)
from .vanilla import VanillaCFR, hist_regret_update

__all__ = [
    "ALGORITHMS", "AverageAccumulator", "CFRSolver", "Counters", "LinearTerminalPlan", "Policy",
    "PokerTerminal", "PublicStateCFR", "VanillaCFR", "build_chwu", "cfr_solve", "default_cadence",
    "extract_average", "hist_regret_update", "make_engine", "ps_regret_update", "regret_matching",
    "terminal_eval_generic", "terminal_eval_poker_linear", "uniform_policy", "update_average",
]

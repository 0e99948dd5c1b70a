"""Parity game solving by vertex splitting, with certified strategies.

Two solvers (a lean recursive one and a fixpoint one that constructs
both witness strategies), an independent brute-force oracle, and a
polynomial verifier that certifies every returned solution.
"""

from .game import (
    GameError,
    Lasso,
    ParityGame,
    PartialSolution,
    Player,
    Solution,
    Strategy,
    StrategyError,
    VertexClass,
    classify,
    play,
    relevant_priorities,
)
from .generate import gen_random
from .oracle import (
    DEFAULT_PROFILE_BUDGET,
    BudgetExceededError,
    brute_force_solve,
    profile_count,
)
from .pgfile import ParseError, emit_game, emit_solution, parse_game, parse_solution
from .solver_constructive import (
    FixpointState,
    TransformRecord,
    bump_priorities,
    compose_tau,
    fixpoint_solve,
    lift_solution,
    preprocess,
    solve_constructive,
)
from .solver_short import (
    CertificationError,
    WinningCore,
    base_case_solve,
    combine_strategies,
    nonempty_step,
    solve_short,
)
from .transforms import (
    RestrictionError,
    SplitGame,
    Subgame,
    closure,
    merge_strategy,
    remove_unfair_win,
    remove_useless_self_loops,
    restrict,
    shift_and_swap,
    split_top,
    swap_solution,
)
from .verification import (
    BadCycleWitness,
    Diagnostic,
    check_solution,
    verify_strategy,
)

__all__ = [
    "BadCycleWitness",
    "BudgetExceededError",
    "CertificationError",
    "DEFAULT_PROFILE_BUDGET",
    "Diagnostic",
    "FixpointState",
    "GameError",
    "Lasso",
    "ParityGame",
    "ParseError",
    "PartialSolution",
    "Player",
    "RestrictionError",
    "Solution",
    "SplitGame",
    "Strategy",
    "StrategyError",
    "Subgame",
    "TransformRecord",
    "VertexClass",
    "WinningCore",
    "base_case_solve",
    "brute_force_solve",
    "bump_priorities",
    "check_solution",
    "classify",
    "closure",
    "combine_strategies",
    "compose_tau",
    "emit_game",
    "emit_solution",
    "fixpoint_solve",
    "gen_random",
    "lift_solution",
    "merge_strategy",
    "nonempty_step",
    "parse_game",
    "parse_solution",
    "play",
    "preprocess",
    "profile_count",
    "relevant_priorities",
    "remove_unfair_win",
    "remove_useless_self_loops",
    "restrict",
    "shift_and_swap",
    "solve_constructive",
    "solve_short",
    "split_top",
    "swap_solution",
    "verify_strategy",
]

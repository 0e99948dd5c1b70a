"""Fixpoint solver that also builds both winning strategies explicitly.

After normalizing self-loops away from non-absorbing vertices, the top
relevant priority k (made even by shift_and_swap when odd) is split.
The split game is then re-solved in rounds: every copy whose original
fell into P1's region last round gets its priority bumped from k to
k+1, turning a win P0 only got by parking on the copy into a loss, and
the P1 region can only grow.  The loop stops when it stops growing.
At the fixpoint a copy is bumped exactly when its original is losing,
so merging the final strategies back yields both regions of the
original game.  P1's strategy on earlier rounds' regions is frozen the
moment a vertex first enters, which is what makes it a single
memoryless witness.

Each round is recorded as a FixpointState.  Monotone growth and
strategy stability are asserted every round; the two verifier checks
run every round in debug mode and always on the final round.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .game import (
    GameError,
    ParityGame,
    Player,
    Solution,
    Strategy,
    relevant_priorities,
)
from .solver_short import CertificationError, base_case_solve
from .transforms import (
    SplitGame,
    merge_strategy,
    remove_unfair_win,
    remove_useless_self_loops,
    shift_and_swap,
    split_top,
    swap_solution,
)
from .verification import check_solution, verify_strategy


@dataclass(frozen=True)
class TransformRecord:
    """What loop normalization did, enough to lift a solution back."""

    original: ParityGame
    reduced: ParityGame
    absorbed: frozenset[int]  # proper edges dropped, vertex now absorbing
    delooped: frozenset[int]  # useless self-loop dropped


@dataclass(frozen=True)
class FixpointState:
    """One round: bumped priorities in, P1 region and strategy out."""

    alpha: int
    x: frozenset[int]
    pi: tuple[int, ...]
    tau: Strategy
    w1: frozenset[int]


def preprocess(game: ParityGame) -> TransformRecord:
    """Normalize self-loops so only absorbing vertices carry them.

    First vertices whose own loop already wins for their owner become
    absorbing, then loops that lose for their owner are dropped.  Both
    steps preserve the winning regions of the game.
    """
    halfway, absorbed = remove_unfair_win(game)
    reduced, delooped = remove_useless_self_loops(halfway)
    for v in reduced.vertices:
        options = reduced.choices_at(v)
        if v in options and len(options) > 1:
            raise CertificationError(
                f"vertex {v} kept a self-loop next to proper edges"
            )
    return TransformRecord(game, reduced, absorbed, delooped)


def lift_solution(record: TransformRecord, solution: Solution) -> Solution:
    """Read a solution of the reduced game as one of the original.

    Regions carry over unchanged.  A vertex forced in the reduced game
    may branch in the original, so the forced move is materialized.
    """
    original = record.original
    reduced = record.reduced
    strategies = {}
    for player in (Player.P0, Player.P1):
        choices = dict(solution.strategy(player).choices)
        for v in sorted(solution.region(player)):
            if original.owners[v] is not player or v in choices:
                continue
            if len(original.choices_at(v)) > 1 and len(reduced.choices_at(v)) == 1:
                choices[v] = reduced.choices_at(v)[0]
        strategies[player] = Strategy(player, choices)
    lifted = Solution(
        solution.w0, solution.w1, strategies[Player.P0], strategies[Player.P1]
    )
    diagnostic = check_solution(original, lifted)
    if diagnostic is not None:
        raise CertificationError(f"lifted solution failed its check: {diagnostic}")
    return lifted


def bump_priorities(split: SplitGame, x: Iterable[int]) -> tuple[int, ...]:
    """Priorities with every copy of an x-member raised from k to k+1."""
    x = set(x)
    for v in x:
        if not 0 <= v < split.plus.n:
            raise GameError(f"vertex {v} out of range 0..{split.plus.n - 1}")
    priorities = list(split.plus.priorities)
    for v in sorted(split.split_set & x):
        priorities[split.copy_for[v]] = split.k + 1
    return tuple(priorities)


def compose_tau(
    history: Sequence[FixpointState], w1: frozenset[int], tau_plus: Strategy
) -> Strategy:
    """P1 strategy for the current round.

    On a vertex seen in an earlier round's region, the choice of the
    earliest such round; on the newly won rest, the fresh strategy;
    undefined elsewhere.
    """
    choices = {}
    settled: set[int] = set()
    for state in history:
        for v in state.w1 - settled:
            move = state.tau.choices.get(v)
            if move is not None:
                choices[v] = move
        settled |= state.w1
    for v in w1 - settled:
        move = tau_plus.choices.get(v)
        if move is not None:
            choices[v] = move
    return Strategy(Player.P1, choices)


def _check_round(
    split: SplitGame,
    arena: ParityGame,
    history: Sequence[FixpointState],
    state: FixpointState,
    thorough: bool,
) -> None:
    """Assert the per-round guarantees, dumping the history on failure.

    Always: regions grow monotonically and the strategy never changes
    on an earlier region.  When ``thorough``: the round strategy wins
    its whole region in the bumped game, and merged back it wins the
    region's originals in the base game.
    """

    def fail(reason: str) -> None:
        trail = "\n".join(repr(s) for s in (*history, state))
        raise CertificationError(f"{reason}\nfixpoint history:\n{trail}")

    if not state.x <= state.w1:
        fail(f"round {state.alpha}: region dropped vertices {sorted(state.x - state.w1)}")
    for earlier in history:
        if not earlier.w1 <= state.w1:
            fail(
                f"round {state.alpha}: lost vertices "
                f"{sorted(earlier.w1 - state.w1)} won in round {earlier.alpha}"
            )
        for v in earlier.w1:
            if state.tau.choices.get(v) != earlier.tau.choices.get(v):
                fail(
                    f"round {state.alpha}: choice at {v} drifted from "
                    f"round {earlier.alpha}"
                )
    if not thorough:
        return
    try:
        witness = verify_strategy(arena, Player.P1, state.tau, state.w1)
    except Exception as exc:  # noqa: BLE001 - report through the dump
        fail(f"round {state.alpha}: tau rejected: {exc}")
    if witness is not None:
        fail(f"round {state.alpha}: tau loses in the bumped game: {witness}")
    merged = merge_strategy(split, state.tau)
    base_region = frozenset(v for v in state.w1 if v < split.base.n)
    try:
        witness = verify_strategy(split.base, Player.P1, merged, base_region)
    except Exception as exc:  # noqa: BLE001
        fail(f"round {state.alpha}: merged tau rejected: {exc}")
    if witness is not None:
        fail(f"round {state.alpha}: merged tau loses in the base game: {witness}")


def fixpoint_solve(
    game: ParityGame,
    *,
    debug: bool = False,
    history_out: list[FixpointState] | None = None,
) -> Solution:
    """Solve a loop-normalized game by the bumping fixpoint.

    Requires that only absorbing vertices carry self-loops (run
    ``preprocess`` first, or use ``solve_constructive``).  When
    ``history_out`` is given, the top-level rounds are appended to it;
    for an odd top priority those rounds describe the shifted and
    swapped game.
    """
    for v in game.vertices:
        options = game.choices_at(v)
        if v in options and len(options) > 1:
            raise GameError(
                f"vertex {v} has a self-loop next to proper edges; "
                "normalize loops first"
            )
    relevant = relevant_priorities(game)
    if not relevant:
        return base_case_solve(game)
    k = max(relevant)
    if k % 2 == 1:
        return swap_solution(
            fixpoint_solve(shift_and_swap(game), debug=debug, history_out=history_out)
        )
    split = split_top(game, k)
    history: list[FixpointState] = []
    solved: dict[tuple[int, ...], Solution] = {}
    x: frozenset[int] = frozenset()
    while True:
        alpha = len(history)
        if alpha > split.plus.n + 1:
            raise CertificationError("fixpoint failed to converge in |V+|+1 rounds")
        pi = bump_priorities(split, x)
        arena = replace(split.plus, priorities=pi)
        if pi in solved:
            inner = solved[pi]
        else:
            inner = fixpoint_solve(arena, debug=debug)
            solved[pi] = inner
        tau = compose_tau(history, inner.w1, inner.tau)
        state = FixpointState(alpha, x, pi, tau, inner.w1)
        done = inner.w1 == x
        _check_round(split, arena, history, state, thorough=debug or done)
        history.append(state)
        if done:
            break
        x = inner.w1
    final = history[-1]
    for v in sorted(split.split_set):
        bumped = final.pi[split.copy_for[v]] == split.k + 1
        if bumped != (v in final.w1):
            raise CertificationError(
                f"fixpoint equivalence broken at vertex {v}: "
                f"bumped={bumped}, losing={v in final.w1}"
            )
    w1 = frozenset(v for v in final.w1 if v < game.n)
    solution = Solution(
        frozenset(game.vertices) - w1,
        w1,
        merge_strategy(split, inner.sigma),
        merge_strategy(split, final.tau),
    )
    diagnostic = check_solution(game, solution)
    if diagnostic is not None:
        raise CertificationError(f"fixpoint solution failed its check: {diagnostic}")
    if history_out is not None:
        history_out.extend(history)
    return solution


def solve_constructive(
    game: ParityGame,
    *,
    debug: bool = False,
    history_out: list[FixpointState] | None = None,
) -> Solution:
    """Normalize loops, run the bumping fixpoint, lift the result back."""
    record = preprocess(game)
    inner = fixpoint_solve(record.reduced, debug=debug, history_out=history_out)
    return lift_solution(record, inner)

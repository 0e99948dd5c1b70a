"""Recursive solver peeling one relevant priority per split.

The step: take the top relevant priority k (first shifting priorities
and swapping owners when k is odd), split its vertices, and solve the
split game, which has strictly fewer relevant priorities.  Either P0
wins the whole split game and the merged strategy wins everywhere, or
P1's split-game region, merged back, is a winning core for P1.  The
main loop accumulates cores, grows them with the closure rules, and
recurses on the undecided rest.  Every accumulated pair is re-certified
by the verifier; a failure means a bug, not a losing position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .game import (
    GameError,
    ParityGame,
    PartialSolution,
    Player,
    Solution,
    Strategy,
    VertexClass,
    classify,
    empty_partial,
    relevant_priorities,
)
from .transforms import (
    closure,
    merge_strategy,
    restrict,
    shift_and_swap,
    split_top,
)
from .verification import check_solution, verify_strategy


class CertificationError(RuntimeError):
    """An output the construction promises to be winning failed its check."""


@dataclass(frozen=True)
class WinningCore:
    """One player, a region, and a strategy certified to win on it."""

    player: Player
    region: frozenset[int]
    strategy: Strategy


def base_case_solve(game: ParityGame) -> Solution:
    """Solve a game with no relevant vertex by backward induction.

    Absorbing vertices go to the player of their parity.  A vanishing
    vertex only sees absorbing successors, so its owner wins iff some
    successor has the owner's parity, taking the least-index one.
    """
    if relevant_priorities(game):
        raise GameError("base case called with relevant vertices present")
    regions = {Player.P0: set(), Player.P1: set()}
    chosen = {Player.P0: {}, Player.P1: {}}
    vanishing = []
    for v in game.vertices:
        if classify(game, v) is VertexClass.ABSORBING:
            regions[Player(game.priorities[v] % 2)].add(v)
        else:
            vanishing.append(v)
    for v in vanishing:
        owner = game.owners[v]
        good = [u for u in game.choices_at(v) if owner.favours(game.priorities[u])]
        if good:
            regions[owner].add(v)
            if len(game.choices_at(v)) > 1:
                chosen[owner][v] = min(good)
        else:
            regions[owner.opponent].add(v)
    solution = Solution(
        frozenset(regions[Player.P0]),
        frozenset(regions[Player.P1]),
        Strategy(Player.P0, chosen[Player.P0]),
        Strategy(Player.P1, chosen[Player.P1]),
    )
    for player in (Player.P0, Player.P1):
        witness = verify_strategy(
            game, player, solution.strategy(player), solution.region(player)
        )
        if witness is not None:
            raise CertificationError(f"base case failed its own check: {witness}")
    return solution


def combine_strategies(
    game: ParityGame,
    player: Player,
    parts: Sequence[tuple[Strategy, frozenset[int]]],
    *,
    verify_parts: bool = True,
) -> tuple[Strategy, frozenset[int]]:
    """Fuse certified (strategy, region) parts into one winning pair.

    Every vertex of the union takes its choice from the lowest-ranking
    part whose region contains it.  A play deviating from that part's
    script can only have moved into a lower-ranking region, so ranks
    along a play descend and the play eventually obeys one part forever.
    The fused pair is always re-verified; with ``verify_parts`` each
    part is checked up front and a failing part raises.
    """
    player = Player(player)
    if verify_parts:
        for rank, (strategy, region) in enumerate(parts):
            witness = verify_strategy(game, player, strategy, region)
            if witness is not None:
                raise CertificationError(
                    f"part {rank} is not winning on its region: {witness}"
                )
    union: set[int] = set()
    for _, region in parts:
        union |= region
    choices = {}
    for v in sorted(union):
        if game.owners[v] is not player:
            continue
        for strategy, region in parts:
            if v in region:
                move = strategy.choices.get(v)
                if move is not None:
                    choices[v] = move
                break
    fused = Strategy(player, choices)
    witness = verify_strategy(game, player, fused, union)
    if witness is not None:
        raise CertificationError(f"fused strategy is not winning: {witness}")
    return fused, frozenset(union)


def nonempty_step(game: ParityGame) -> WinningCore:
    """Produce one certified winning core of a game with relevant vertices.

    Splits the top relevant priority (made even by shift_and_swap if
    needed) and fully solves the split game.  If P0 wins it everywhere
    the merged strategy wins the whole base game; otherwise P1's split
    region never contains a copy, and merged back it is a P1 core.
    """
    relevant = relevant_priorities(game)
    if not relevant:
        raise GameError("nonempty_step needs at least one relevant vertex")
    k = max(relevant)
    if k % 2 == 1:
        flipped = nonempty_step(shift_and_swap(game))
        return WinningCore(
            flipped.player.opponent,
            flipped.region,
            Strategy(flipped.player.opponent, dict(flipped.strategy.choices)),
        )
    split = split_top(game, k)
    inner = solve_short(split.plus)
    copies = frozenset(split.copy_of)
    if not inner.w1:
        core = WinningCore(
            Player.P0,
            frozenset(game.vertices),
            merge_strategy(split, inner.sigma),
        )
    else:
        if inner.w1 & copies:
            raise CertificationError(
                "a copy of the top even priority ended up in the P1 region"
            )
        core = WinningCore(
            Player.P1, inner.w1, merge_strategy(split, inner.tau)
        )
    witness = verify_strategy(game, core.player, core.strategy, core.region)
    if witness is not None:
        raise CertificationError(f"core failed verification: {witness}")
    return core


def _fuse(
    game: ParityGame,
    accumulated: PartialSolution,
    player: Player,
    strategy: Strategy,
    region: frozenset[int],
) -> PartialSolution:
    """Fold a freshly lifted core into the accumulated partial solution.

    The core was certified inside its residual subgame; on the full game
    its adversary edges may escape into the earlier regions where only
    the accumulated strategy knows the moves, so parts are not
    re-verified individually, only the fused pair is.
    """
    fused, union = combine_strategies(
        game,
        player,
        [(accumulated.strategy(player), accumulated.region(player)), (strategy, region)],
        verify_parts=False,
    )
    if player is Player.P0:
        return PartialSolution(union, accumulated.w1, fused, accumulated.tau)
    return PartialSolution(accumulated.w0, union, accumulated.sigma, fused)


def solve_short(game: ParityGame) -> Solution:
    """Solve a game by repeated winning cores and closure.

    Each round restricts to the undecided vertices (a legal subgame by
    the closure guarantees), extracts one core there, lifts it back,
    fuses it with the matching accumulated pair and closes off.  The
    base case finishes the last residual.  The final partition is
    certified before being returned.
    """
    accumulated = empty_partial()
    while True:
        undecided = sorted(set(game.vertices) - accumulated.w0 - accumulated.w1)
        if not undecided:
            break
        sub = restrict(game, undecided)
        if not relevant_priorities(sub.game):
            base = base_case_solve(sub.game)
            for player in (Player.P0, Player.P1):
                region = base.region(player)
                accumulated = _fuse(
                    game,
                    accumulated,
                    player,
                    sub.lift_strategy(game, base.strategy(player), region),
                    sub.lift_vertices(region),
                )
            break
        core = nonempty_step(sub.game)
        accumulated = _fuse(
            game,
            accumulated,
            core.player,
            sub.lift_strategy(game, core.strategy, core.region),
            sub.lift_vertices(core.region),
        )
        accumulated = closure(game, accumulated)
    solution = Solution(
        accumulated.w0, accumulated.w1, accumulated.sigma, accumulated.tau
    )
    diagnostic = check_solution(game, solution)
    if diagnostic is not None:
        raise CertificationError(f"final solution failed its check: {diagnostic}")
    return solution

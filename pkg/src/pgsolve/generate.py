"""Seeded random game generation for corpora and fuzzing."""

from __future__ import annotations

import random

from .game import ParityGame


def gen_random(
    n: int, max_priority: int, max_outdegree: int, seed: int
) -> ParityGame:
    """A random game with n vertices, fully determined by the seed.

    Every vertex draws an owner, a priority in 0..max_priority and a
    nonempty set of distinct successors of size at most max_outdegree,
    in that fixed order, so equal arguments give equal games.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if max_priority < 0:
        raise ValueError("priorities are nonnegative")
    if max_outdegree < 1:
        raise ValueError("every vertex needs a successor")
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        owner = rng.randrange(2)
        priority = rng.randint(0, max_priority)
        degree = rng.randint(1, min(max_outdegree, n))
        rows.append((owner, priority, tuple(rng.sample(range(n), degree))))
    return ParityGame.from_vertices(rows)

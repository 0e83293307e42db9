"""Brute-force ground truth: try every circular order, keep the valid ones.

Person 0 is pinned to the first seat so each rotation class is generated
exactly once; the remaining persons run through all permutations in
lexicographic order. No pruning on purpose, so the count stays an
independent check on the formula and the enumerator.

The search space splits by who sits in the second seat. Those partitions
can be farmed out to worker processes and their counts summed.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from typing import Iterator

from .model import ProblemSpec, Seating, SeatingChecker, SeatingError, build_population

DEFAULT_CAP = 11


class CapExceeded(RuntimeError):
    pass


def _prepare(spec: ProblemSpec, cap: int) -> SeatingChecker:
    n = spec.total_persons
    if n < 2:
        raise SeatingError("a table needs at least two persons")
    if n > cap:
        raise CapExceeded(
            f"{n} persons exceed the brute-force cap of {cap} (would try {n - 1}! orders)"
        )
    return SeatingChecker(build_population(spec))


def _partition(n: int, second: int) -> Iterator[Seating]:
    rest = [x for x in range(1, n) if x != second]
    head = (0, second)
    for tail in permutations(rest):
        yield head + tail


def _count_partitions(spec: ProblemSpec, seconds: list[int]) -> int:
    check = SeatingChecker(build_population(spec))
    n = spec.total_persons
    return sum(1 for s in seconds for order in _partition(n, s) if check(order))


def brute_force_seatings(spec: ProblemSpec, cap: int = DEFAULT_CAP) -> Iterator[Seating]:
    """Valid canonical seatings in lexicographic order."""
    check = _prepare(spec, cap)
    n = spec.total_persons
    return (order for s in range(1, n) for order in _partition(n, s) if check(order))


def brute_force_count(spec: ProblemSpec, cap: int = DEFAULT_CAP, workers: int = 1) -> int:
    check = _prepare(spec, cap)
    n = spec.total_persons
    seconds = list(range(1, n))
    if workers <= 1 or n <= 2:
        return sum(1 for s in seconds for order in _partition(n, s) if check(order))
    # round-robin so the shards stay balanced
    shards = [seconds[w::workers] for w in range(workers)]
    shards = [shard for shard in shards if shard]
    with ProcessPoolExecutor(max_workers=len(shards)) as pool:
        return sum(pool.map(_count_partitions, [spec] * len(shards), shards))

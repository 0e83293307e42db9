"""Closed-form seating counts, exact integers throughout.

The count is built from independent factors:

* each family of size k >= 3 forms a woman...man...woman block, which can
  be laid out internally in (k-2)*(k-1)! ways;
* couples pair up into wife-husband-husband-wife blocks; there are
  n2!/(n2/2)! ways to choose the pairs together with their orientation;
* the i + j blocks go round the table in (i+j-1)! ways;
* single men fill the i gaps between paired husbands, single women fill
  the i + j gaps between blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ProblemSpec


class DomainError(ValueError):
    """Spec outside the range the block construction covers."""


@dataclass(frozen=True)
class BlockCounts:
    i: int  # wife-husband-husband-wife blocks
    j: int  # single-family blocks

    @property
    def blocks(self) -> int:
        return self.i + self.j


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


def block_counts(spec: ProblemSpec) -> BlockCounts | None:
    """Number of paired-couple and single-family blocks, or None when an odd
    number of couples makes every seating impossible."""
    n2 = spec.count(2)
    if n2 % 2:
        return None
    return BlockCounts(n2 // 2, spec.family_total - n2)


def internal_arrangements(k: int) -> int:
    if k < 3:
        raise ValueError(f"only families of size >= 3 form their own block, got {k}")
    return (k - 2) * factorial(k - 1)


def _require_even(n2: int) -> None:
    if n2 < 0 or n2 % 2:
        raise ValueError(f"couples pair up only in even numbers, got {n2}")


def couple_pairings(n2: int) -> int:
    """Unordered ways to split n2 couples into pairs."""
    _require_even(n2)
    half = n2 // 2
    return factorial(n2) // (factorial(half) * 2**half)


def couple_orientations(n2: int) -> int:
    """Each pair of couples reads W1 H1 H2 W2 or W2 H2 H1 W1."""
    _require_even(n2)
    return 2 ** (n2 // 2)


def couple_block_factor(n2: int) -> int:
    return couple_pairings(n2) * couple_orientations(n2)


def slot_fill_factor(slots: int, items: int) -> int:
    """Ways to place ``items`` labeled persons into ``slots`` ordered gaps,
    order within a gap mattering: items! * C(slots + items - 1, items)."""
    if slots < 0 or items < 0:
        raise ValueError("slots and items must be nonnegative")
    if slots == 0:
        return 1 if items == 0 else 0
    return factorial(items) * math.comb(slots + items - 1, items)


def count_paper(spec: ProblemSpec) -> int:
    """The closed-form count, taken at face value.

    Zero for an odd number of couples. For a lone family of size >= 4 this
    overcounts; see :func:`count_exact`.
    """
    if spec.family_total == 0:
        raise DomainError("no families: the block construction needs at least one block")
    bc = block_counts(spec)
    if bc is None:
        return 0
    total = 1
    for k, n in spec.families:
        if k >= 3:
            total *= internal_arrangements(k) ** n
    total *= couple_block_factor(spec.count(2))
    total *= slot_fill_factor(bc.i, spec.single_men)
    total *= slot_fill_factor(bc.blocks, spec.single_women)
    total *= factorial(bc.blocks - 1)
    return total


def is_lone_large_family(spec: ProblemSpec) -> bool:
    """One family of size >= 4 and nobody else at the table."""
    return (
        len(spec.families) == 1
        and spec.families[0][1] == 1
        and spec.families[0][0] >= 4
        and spec.single_men == 0
        and spec.single_women == 0
    )


def is_lone_couple(spec: ProblemSpec) -> bool:
    return spec.families == ((2, 1),) and spec.single_men == 0 and spec.single_women == 0


def count_exact(spec: ProblemSpec) -> int:
    """Number of distinct valid seatings (rotations identified).

    Agrees with :func:`count_paper` except in two cases: a lone family of
    size k >= 4 fills the whole circle, so its k-2 husband positions are
    rotations of one another and only (k-1)! seatings remain; and a lone
    couple is a valid 2-person table although couples cannot pair up.
    Tables of singles only are counted directly.
    """
    if spec.total_persons < 2:
        raise DomainError("a table needs at least two persons")
    if spec.family_total == 0:
        m, w = spec.single_men, spec.single_women
        if m and w:
            return 0  # somewhere a man sits next to a woman
        return factorial(m + w - 1)
    if is_lone_large_family(spec):
        return factorial(spec.families[0][0] - 1)
    if is_lone_couple(spec):
        return 1
    return count_paper(spec)

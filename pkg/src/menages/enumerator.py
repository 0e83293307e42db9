"""Constructive generation of valid seatings, block by block.

A :class:`BlockPlan` records one choice for every factor of the closed-form
count. ``enumerate_plans`` walks all of them as nested generators, in this
fixed order from slowest to fastest varying:

    couple matching, orientations, family block orders, block cycle,
    men composition, men order, women composition, women order.

``materialize`` turns a plan into a canonical seating.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import islice, permutations, product

from .formula import DomainError, block_counts, count_paper
from .model import Person, ProblemSpec, Seating, build_population, canonicalize

DEFAULT_CEILING = 10**7


class CeilingExceeded(RuntimeError):
    pass


def perfect_matchings(n2: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All ways to pair up 1..n2; the smallest unmatched index is paired first."""
    if n2 < 0 or n2 % 2:
        raise ValueError(f"perfect matchings need an even count, got {n2}")

    def rec(free: tuple[int, ...]):
        if not free:
            yield ()
            return
        a = free[0]
        for pos in range(1, len(free)):
            rest = free[1:pos] + free[pos + 1:]
            for tail in rec(rest):
                yield ((a, free[pos]),) + tail

    yield from rec(tuple(range(1, n2 + 1)))


def family_block_orders(k: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """(husband_position, wife_order) pairs for one family block.

    Positions are 1-based and strictly inside the block; wives are listed
    left to right by wife index.
    """
    if k < 3:
        raise ValueError(f"only families of size >= 3 form their own block, got {k}")
    for p in range(2, k):
        for wives in permutations(range(1, k)):
            yield p, wives


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Vectors of ``parts`` nonnegative integers summing to ``total``, colex order."""
    if total < 0 or parts < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for head in weak_compositions(total - last, parts - 1):
            yield head + (last,)


@dataclass(frozen=True)
class BlockPlan:
    # (a, b) couple numbers with a < b, one entry per paired block
    couple_matching: tuple[tuple[int, int], ...]
    # True: couple a supplies the left wife (W_a H_a .. H_b W_b)
    orientations: tuple[bool, ...]
    # (family number, husband position, wife order), families of size >= 3
    family_orders: tuple[tuple[int, int, tuple[int, ...]], ...]
    # block indices round the table, block 0 first; paired blocks come
    # before family blocks in the indexing
    block_cycle: tuple[int, ...]
    men_composition: tuple[int, ...]
    men_order: tuple[int, ...]
    women_composition: tuple[int, ...]
    women_order: tuple[int, ...]


def _families_by_size(spec: ProblemSpec) -> list[tuple[int, int]]:
    """(family number, size) for every family of size >= 3."""
    return [(f, k) for f, k in enumerate(spec.family_sizes(), start=1) if k >= 3]


def enumerate_plans(spec: ProblemSpec, start: int = 0) -> Iterator[BlockPlan]:
    """Stream every plan of ``spec``; ``start`` skips that many plans.

    The stream is empty when the number of couples is odd.
    """
    if spec.family_total == 0:
        raise DomainError("no families: the block construction needs at least one block")
    stream = _plans(spec)
    if start:
        stream = islice(stream, start, None)
    return stream


def _plans(spec: ProblemSpec) -> Iterator[BlockPlan]:
    bc = block_counts(spec)
    if bc is None:
        return
    i, blocks = bc.i, bc.blocks
    m, w = spec.single_men, spec.single_women
    big = _families_by_size(spec)

    for matching in perfect_matchings(spec.count(2)):
        for orient in product((True, False), repeat=i):
            for orders in product(*(family_block_orders(k) for _, k in big)):
                family_orders = tuple(
                    (f, p, wives) for (f, _), (p, wives) in zip(big, orders)
                )
                for rest in permutations(range(1, blocks)):
                    cycle = (0,) + rest
                    for men_comp in weak_compositions(m, i):
                        for men in permutations(range(1, m + 1)):
                            for women_comp in weak_compositions(w, blocks):
                                for women in permutations(range(1, w + 1)):
                                    yield BlockPlan(
                                        matching, orient, family_orders, cycle,
                                        men_comp, men, women_comp, women,
                                    )


def _split(order: Sequence[int], composition: Sequence[int]) -> list[tuple[int, ...]]:
    out, at = [], 0
    for size in composition:
        out.append(tuple(order[at:at + size]))
        at += size
    return out


def materialize(plan: BlockPlan, population: Sequence[Person]) -> Seating:
    ids = {person.key: person.id for person in population}
    try:
        men_slots = _split(plan.men_order, plan.men_composition)
        women_slots = _split(plan.women_order, plan.women_composition)
        blocks: list[list[int]] = []
        for (a, b), forward in zip(plan.couple_matching, plan.orientations, strict=True):
            left, right = (a, b) if forward else (b, a)
            men = men_slots[len(blocks)]
            blocks.append(
                [ids[("W", left, 1)], ids[("H", left)]]
                + [ids[("M", x)] for x in men]
                + [ids[("H", right)], ids[("W", right, 1)]]
            )
        for family, p, wives in plan.family_orders:
            row = [ids[("W", family, x)] for x in wives]
            row.insert(p - 1, ids[("H", family)])
            blocks.append(row)
        order: list[int] = []
        for b in plan.block_cycle:
            order.extend(blocks[b])
            order.extend(ids[("F", x)] for x in women_slots[b])
    except (KeyError, IndexError, ValueError) as exc:
        raise ValueError(f"plan does not fit this population: {exc}") from exc
    if len(order) != len(population):
        raise ValueError("plan does not fit this population: wrong number of persons")
    return canonicalize(order)


def count_by_enumeration(
    spec: ProblemSpec, ceiling: int = DEFAULT_CEILING
) -> tuple[int, int]:
    """(number of plans, number of distinct seatings they produce)."""
    expected = count_paper(spec)
    if expected > ceiling:
        raise CeilingExceeded(
            f"{expected} plans exceed the enumeration ceiling of {ceiling}"
        )
    population = build_population(spec)
    plans = 0
    seen: set[Seating] = set()
    for plan in enumerate_plans(spec):
        plans += 1
        seen.add(materialize(plan, population))
    return plans, len(seen)


def enumerate_seatings(spec: ProblemSpec, limit: int | None = None) -> Iterator[Seating]:
    """Materialized seatings in plan order (duplicates kept)."""
    population = build_population(spec)
    plans = enumerate_plans(spec)
    if limit is not None:
        plans = islice(plans, limit)
    for plan in plans:
        yield materialize(plan, population)


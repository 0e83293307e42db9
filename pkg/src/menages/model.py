"""Population, seatings and the seating validity predicate.

A table is a circle of persons. Families are one husband plus one or more
wives; single men and single women sit on their own. A seating is valid when

    C1  every family occupies one contiguous arc of the circle,
    C2  a man sits next to a woman only if she is one of his wives,
    C3  a husband with two or more wives has one of his wives on each side.

Seatings are stored as tuples of person ids. Two seatings that differ by a
rotation are the same seating, two that differ by a reflection are not.
"""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Iterable

MALE = "male"
FEMALE = "female"

HUSBAND = "husband"
WIFE = "wife"
SINGLE_MAN = "single_man"
SINGLE_WOMAN = "single_woman"

Seating = tuple[int, ...]


class SpecError(ValueError):
    """Malformed problem description."""


class SeatingError(ValueError):
    """A seating that is not a permutation of the population."""


@dataclass(frozen=True)
class ProblemSpec:
    """Family sizes with their multiplicities plus the number of singles.

    ``families`` accepts a mapping ``{k: n_k}`` or an iterable of pairs; it
    is normalized to a sorted tuple of pairs with zero counts dropped, so
    two specs describing the same population compare equal.
    """

    families: tuple[tuple[int, int], ...] = ()
    single_men: int = 0
    single_women: int = 0

    def __post_init__(self):
        raw = self.families
        items = raw.items() if isinstance(raw, Mapping) else raw
        counts: dict[int, int] = {}
        for k, n in items:
            if isinstance(k, bool) or isinstance(n, bool):
                raise SpecError("family sizes and counts must be integers")
            k, n = int(k), int(n)
            if k < 2:
                raise SpecError(f"family size must be at least 2, got {k}")
            if n < 0:
                raise SpecError(f"negative count {n} for family size {k}")
            counts[k] = counts.get(k, 0) + n
        object.__setattr__(
            self, "families", tuple(sorted((k, n) for k, n in counts.items() if n))
        )
        for name in ("single_men", "single_women"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise SpecError(f"{name} must be a nonnegative integer, got {value!r}")

    def count(self, k: int) -> int:
        """n_k, the number of families of size k."""
        return dict(self.families).get(k, 0)

    @property
    def family_total(self) -> int:
        return sum(n for _, n in self.families)

    @property
    def total_persons(self) -> int:
        return sum(k * n for k, n in self.families) + self.single_men + self.single_women

    @property
    def r(self) -> int:
        return max((k for k, _ in self.families), default=0)

    def family_sizes(self) -> list[int]:
        """Size of each family in labeling order (family 1 first)."""
        return [k for k, n in self.families for _ in range(n)]

    def describe(self) -> str:
        fam = ",".join(f"{k}={n}" for k, n in self.families) or "-"
        return f"{fam};m={self.single_men};w={self.single_women}"

    def to_json(self) -> dict:
        return {
            "families": {str(k): n for k, n in self.families},
            "single_men": self.single_men,
            "single_women": self.single_women,
        }


@dataclass(frozen=True)
class Person:
    id: int
    sex: str
    role: str
    family: int | None = None  # 1-based family number, None for singles
    index: int = 0  # wife index within the family, or single index (1-based)

    @property
    def token(self) -> str:
        if self.role == HUSBAND:
            return f"H{self.family}"
        if self.role == WIFE:
            return f"W{self.family}.{self.index}"
        if self.role == SINGLE_MAN:
            return f"M{self.index}"
        return f"F{self.index}"

    @property
    def key(self) -> tuple:
        if self.role == HUSBAND:
            return ("H", self.family)
        if self.role == WIFE:
            return ("W", self.family, self.index)
        return ("M" if self.role == SINGLE_MAN else "F", self.index)


_TOKEN = re.compile(r"^(?:H(\d+)|W(\d+)\.(\d+)|M(\d+)|F(\d+))$")


def _token_key(token: str) -> tuple:
    match = _TOKEN.match(token)
    if match is None:
        raise SeatingError(f"unknown person token {token!r}")
    h, wf, wi, sm, sw = match.groups()
    if h is not None:
        return ("H", int(h))
    if wf is not None:
        return ("W", int(wf), int(wi))
    if sm is not None:
        return ("M", int(sm))
    return ("F", int(sw))


def build_population(spec: ProblemSpec) -> list[Person]:
    """Label every person of ``spec`` with consecutive ids from 0.

    Families come first by increasing size, husband before his wives; then
    single men, then single women.
    """
    people: list[Person] = []
    for number, k in enumerate(spec.family_sizes(), start=1):
        people.append(Person(len(people), MALE, HUSBAND, number))
        for j in range(1, k):
            people.append(Person(len(people), FEMALE, WIFE, number, j))
    for i in range(1, spec.single_men + 1):
        people.append(Person(len(people), MALE, SINGLE_MAN, None, i))
    for i in range(1, spec.single_women + 1):
        people.append(Person(len(people), FEMALE, SINGLE_WOMAN, None, i))
    return people


def canonicalize(order: Sequence[int]) -> Seating:
    """Rotate ``order`` so that person 0 comes first."""
    order = tuple(order)
    if sorted(order) != list(range(len(order))):
        raise SeatingError(f"not a permutation of 0..{len(order) - 1}: {order}")
    if not order:
        return order
    start = order.index(0)
    return order[start:] + order[:start]


def _adjacencies(n: int) -> list[tuple[int, int]]:
    # a 2-person circle has one adjacency, not two
    if n < 2:
        return []
    if n == 2:
        return [(0, 1)]
    return [(p, (p + 1) % n) for p in range(n)]


@dataclass(frozen=True)
class Violation:
    constraint: str
    position: int
    persons: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.constraint} violated: {self.message}"


@dataclass(frozen=True)
class Verdict:
    valid: bool
    violations: tuple[Violation, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.valid

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def __str__(self) -> str:
        return "VALID" if self.valid else str(self.first)


def _compatible(a: Person, b: Person) -> bool:
    """May ``a`` and ``b`` sit next to each other as far as C2 is concerned?"""
    if a.sex == b.sex:
        return True
    man, woman = (a, b) if a.sex == MALE else (b, a)
    return man.role == HUSBAND and woman.role == WIFE and man.family == woman.family


def _check_permutation(population: Sequence[Person], seating: Sequence[int]) -> None:
    n = len(population)
    if len(seating) != n or sorted(seating) != list(range(n)):
        raise SeatingError(
            f"seating must list each of the {n} persons exactly once, got {list(seating)}"
        )
    if n < 2:
        raise SeatingError("a table needs at least two persons")


def is_valid_seating(population: Sequence[Person], seating: Sequence[int]) -> Verdict:
    """Check constraints C1-C3 and report every violation.

    Violations are ordered by scan position; at one position C1 precedes C2
    precedes C3. ``Verdict.first`` is the one shown to users.
    """
    _check_permutation(population, seating)
    n = len(seating)
    persons = [population[pid] for pid in seating]
    found: list[tuple[int, int, Violation]] = []

    members: dict[int, list[int]] = {}
    for p, person in enumerate(persons):
        if person.family is not None:
            members.setdefault(person.family, []).append(p)
    for family, spots in members.items():
        if len(spots) == n:
            continue
        inside = set(spots)
        exits = sum(1 for p in spots if (p + 1) % n not in inside)
        if exits != 1:
            tokens = tuple(persons[p].token for p in spots)
            found.append(
                (spots[0], 1, Violation(
                    "C1", spots[0], tokens,
                    f"family {family} not contiguous ({' '.join(tokens)})",
                ))
            )

    for p, q in _adjacencies(n):
        a, b = persons[p], persons[q]
        if not _compatible(a, b):
            found.append(
                (p, 2, Violation("C2", p, (a.token, b.token), f"{a.token} adjacent {b.token}"))
            )

    for p, person in enumerate(persons):
        if person.role != HUSBAND or len(members[person.family]) < 3:
            continue
        left, right = persons[(p - 1) % n], persons[(p + 1) % n]
        if not all(x.role == WIFE and x.family == person.family for x in (left, right)):
            found.append(
                (p, 3, Violation(
                    "C3", p, (left.token, person.token, right.token),
                    f"{person.token} not flanked by own wives ({left.token}, {right.token})",
                ))
            )

    found.sort(key=lambda item: (item[0], item[1]))
    violations = tuple(v for _, _, v in found)
    return Verdict(not violations, violations)


class SeatingChecker:
    """Boolean form of :func:`is_valid_seating` for hot loops.

    Takes the same decisions, but precomputes pair compatibility and checks
    contiguity by counting family exits, so one call is a single pass over
    the circle with no allocation beyond the adjacency scan.
    """

    def __init__(self, population: Sequence[Person]):
        self.n = n = len(population)
        self.ok = [[_compatible(a, b) for b in population] for a in population]
        family_size: dict[int, int] = {}
        for person in population:
            if person.family is not None:
                family_size[person.family] = family_size.get(person.family, 0) + 1
        # singles get unique negative tags so they never look like kin
        self.tag = [
            p.family if p.family is not None else -1 - p.id for p in population
        ]
        self.expected_exits = sum(1 for size in family_size.values() if size < n)
        self.polygamous = [
            (p.id, p.family) for p in population
            if p.role == HUSBAND and family_size[p.family] >= 3
        ]

    def __call__(self, order: Sequence[int]) -> bool:
        n = self.n
        if n == 2:
            return self.ok[order[0]][order[1]]
        ok, tag = self.ok, self.tag
        exits = 0
        prev = order[-1]
        for cur in order:
            if not ok[prev][cur]:
                return False
            t = tag[prev]
            if t >= 0 and t != tag[cur]:
                exits += 1
            prev = cur
        if exits != self.expected_exits:
            return False
        for husband, family in self.polygamous:
            p = order.index(husband)
            if tag[order[p - 1]] != family or tag[order[(p + 1) % n]] != family:
                return False
        return True


def format_seating(population: Sequence[Person], seating: Iterable[int]) -> str:
    return " ".join(population[pid].token for pid in seating)


def parse_seating(population: Sequence[Person], line: str) -> Seating:
    """Turn a line of person tokens into a tuple of ids.

    Raises :class:`SeatingError` on unknown tokens, repeats or a wrong
    number of persons.
    """
    by_key = {person.key: person.id for person in population}
    ids = []
    for token in line.split():
        key = _token_key(token)
        if key not in by_key:
            raise SeatingError(f"no person {token!r} in this population")
        ids.append(by_key[key])
    if len(set(ids)) != len(ids):
        raise SeatingError("a person appears more than once")
    if len(ids) != len(population):
        raise SeatingError(f"expected {len(population)} persons, got {len(ids)}")
    return tuple(ids)

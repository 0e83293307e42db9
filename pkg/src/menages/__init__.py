"""Exact counts and enumeration for circular seatings of polygamous families
with single men and single women."""

from .enumerator import (
    BlockPlan,
    count_by_enumeration,
    enumerate_plans,
    enumerate_seatings,
    family_block_orders,
    materialize,
    perfect_matchings,
    weak_compositions,
)
from .formula import (
    BlockCounts,
    DomainError,
    block_counts,
    count_exact,
    count_paper,
    couple_block_factor,
    couple_orientations,
    couple_pairings,
    factorial,
    internal_arrangements,
    slot_fill_factor,
)
from .model import (
    Person,
    ProblemSpec,
    SeatingChecker,
    SeatingError,
    SpecError,
    build_population,
    canonicalize,
    format_seating,
    is_valid_seating,
    parse_seating,
)
from .oracle import brute_force_count, brute_force_seatings

__version__ = "0.1.0"

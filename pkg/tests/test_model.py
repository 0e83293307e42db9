import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from menages.model import (
    FEMALE,
    HUSBAND,
    MALE,
    SINGLE_MAN,
    WIFE,
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


def seat(spec, line):
    return parse_seating(build_population(spec), line)


def test_population_single_couple():
    people = build_population(ProblemSpec({2: 1}))
    assert [(p.id, p.role, p.family, p.token) for p in people] == [
        (0, HUSBAND, 1, "H1"),
        (1, WIFE, 1, "W1.1"),
    ]


def test_population_triple_and_single_man():
    people = build_population(ProblemSpec({3: 1}, single_men=1))
    assert [p.token for p in people] == ["H1", "W1.1", "W1.2", "M1"]
    assert [p.sex for p in people] == [MALE, FEMALE, FEMALE, MALE]
    assert people[3].role == SINGLE_MAN


def test_population_empty():
    assert build_population(ProblemSpec()) == []


def test_population_orders_families_by_size():
    people = build_population(ProblemSpec({3: 1, 2: 2}, 1, 2))
    assert format_seating(people, range(len(people))) == (
        "H1 W1.1 H2 W2.1 H3 W3.1 W3.2 M1 F1 F2"
    )


@pytest.mark.parametrize(
    "families, men, women",
    [({1: 1}, 0, 0), ({2: -1}, 0, 0), ({}, -1, 0), ({}, 0, -2), ({0: 3}, 0, 0)],
)
def test_spec_rejects_bad_counts(families, men, women):
    with pytest.raises(SpecError):
        ProblemSpec(families, men, women)


def test_spec_derived_fields():
    spec = ProblemSpec({2: 2, 5: 1, 4: 0}, 1, 3)
    assert spec.families == ((2, 2), (5, 1))
    assert spec.total_persons == 13
    assert spec.r == 5
    assert ProblemSpec().r == 0
    assert spec == ProblemSpec([(5, 1), (2, 2)], 1, 3)


@pytest.mark.parametrize(
    "order, expected",
    [([2, 0, 1], (0, 1, 2)), ([0, 1, 2], (0, 1, 2)), ([1, 2, 0, 3], (0, 3, 1, 2))],
)
def test_canonicalize(order, expected):
    assert canonicalize(order) == expected
    assert canonicalize(expected) == expected


def test_canonicalize_rejects_non_permutation():
    with pytest.raises(SeatingError):
        canonicalize([0, 0, 1])


def test_paired_couples_valid():
    spec = ProblemSpec({2: 2})
    verdict = is_valid_seating(build_population(spec), seat(spec, "W1.1 H1 H2 W2.1"))
    assert verdict.valid
    assert str(verdict) == "VALID"


def test_foreign_wife_is_c2():
    spec = ProblemSpec({2: 2})
    verdict = is_valid_seating(build_population(spec), seat(spec, "W1.1 H1 W2.1 H2"))
    assert not verdict
    assert verdict.first.constraint == "C2"
    assert verdict.first.persons == ("H1", "W2.1")
    assert str(verdict) == "C2 violated: H1 adjacent W2.1"


def test_unflanked_polygamous_husband():
    spec = ProblemSpec({3: 1}, single_women=1)
    verdict = is_valid_seating(build_population(spec), seat(spec, "H1 F1 W1.1 W1.2"))
    assert [v.constraint for v in verdict.violations] == ["C2", "C3"]
    assert verdict.first.persons == ("H1", "F1")


def test_split_family_is_c1():
    spec = ProblemSpec({3: 1}, single_women=2)
    verdict = is_valid_seating(build_population(spec), seat(spec, "W1.1 H1 W1.2 F1 F2"))
    assert verdict.valid
    verdict = is_valid_seating(build_population(spec), seat(spec, "W1.1 H1 F1 W1.2 F2"))
    assert "C1" in [v.constraint for v in verdict.violations]


def test_monogamous_husband_exempt_from_c3():
    spec = ProblemSpec({2: 2}, single_men=1)
    assert is_valid_seating(build_population(spec), seat(spec, "W1.1 H1 M1 H2 W2.1"))


def test_two_person_table():
    spec = ProblemSpec({2: 1})
    verdict = is_valid_seating(build_population(spec), (0, 1))
    assert verdict.valid
    spec = ProblemSpec({}, 1, 1)
    verdict = is_valid_seating(build_population(spec), (0, 1))
    # one adjacency, reported once
    assert len(verdict.violations) == 1


def test_women_may_sit_together():
    spec = ProblemSpec({2: 2}, single_women=2)
    assert is_valid_seating(build_population(spec), seat(spec, "H1 H2 W2.1 F1 F2 W1.1"))


def test_malformed_seating():
    people = build_population(ProblemSpec({2: 2}))
    with pytest.raises(SeatingError):
        is_valid_seating(people, (0, 1, 2))
    with pytest.raises(SeatingError):
        is_valid_seating(people, (0, 1, 2, 2))


@pytest.mark.parametrize(
    "line",
    ["W1.1 H1 H2", "W1.1 H1 H2 W2.1 W2.1", "W1.1 H1 H2 W3.1", "W1.1 H1 H2 X"],
)
def test_parse_seating_errors(line):
    with pytest.raises(SeatingError):
        seat(ProblemSpec({2: 2}), line)


def test_parse_format_round_trip():
    spec = ProblemSpec({2: 2, 3: 1}, 1, 1)
    people = build_population(spec)
    order = tuple(random.Random(3).sample(range(len(people)), len(people)))
    assert parse_seating(people, format_seating(people, order)) == order


specs = st.builds(
    ProblemSpec,
    st.dictionaries(st.integers(2, 5), st.integers(0, 2), max_size=3),
    st.integers(0, 2),
    st.integers(0, 2),
).filter(lambda s: 2 <= s.total_persons <= 10)


@st.composite
def spec_and_order(draw):
    spec = draw(specs)
    order = draw(st.permutations(range(spec.total_persons)))
    return spec, tuple(order)


@settings(max_examples=300)
@given(spec_and_order(), st.integers(0, 20))
def test_validity_rotation_invariant(case, shift):
    spec, order = case
    people = build_population(spec)
    shift %= len(order)
    rotated = order[shift:] + order[:shift]
    assert is_valid_seating(people, order).valid == is_valid_seating(people, rotated).valid
    assert canonicalize(rotated) == canonicalize(order)


@settings(max_examples=300)
@given(spec_and_order())
def test_validity_reflection_closed(case):
    spec, order = case
    people = build_population(spec)
    assert is_valid_seating(people, order).valid == is_valid_seating(people, order[::-1]).valid


@settings(max_examples=500)
@given(spec_and_order())
def test_fast_checker_matches_report(case):
    spec, order = case
    people = build_population(spec)
    assert SeatingChecker(people)(order) == is_valid_seating(people, order).valid


def test_fast_checker_matches_report_on_valid_seatings():
    from menages.oracle import brute_force_seatings

    spec = ProblemSpec({2: 2, 3: 1}, 1, 1)
    people = build_population(spec)
    valid = set(brute_force_seatings(spec))
    assert valid
    for order in valid:
        assert is_valid_seating(people, order).valid


def test_swapping_single_men_preserves_validity():
    spec = ProblemSpec({2: 2}, single_men=2)
    people = build_population(spec)
    a, b = (p.id for p in people if p.role == SINGLE_MAN)
    swap = {a: b, b: a}
    rng = random.Random(11)
    for _ in range(200):
        order = tuple(rng.sample(range(len(people)), len(people)))
        relabeled = tuple(swap.get(x, x) for x in order)
        assert is_valid_seating(people, order).valid == is_valid_seating(people, relabeled).valid

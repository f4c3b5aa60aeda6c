import random

import pytest
from hypothesis import given, settings, strategies as st

from cqlogic import cases
from cqlogic.errors import DomainError, FormatError
from cqlogic.setlogic import (
    Family,
    Universe,
    atoms_are_pair_intersections,
    boolean_atoms,
    concrete_closure,
    difference_closure,
    family,
    family_from_qlf,
    is_difference_closed,
    make_even_logic,
    mask_of,
    parse_qlf,
    points_of,
    serialize_qlf,
    set_literal,
    validate_logic,
)

from oracles import closure_by_sets, masks_to_sets


class TestUniverseAndMasks:
    def test_bounds(self):
        with pytest.raises(DomainError):
            Universe(0)
        with pytest.raises(DomainError):
            Universe(65)
        assert Universe(64).full_mask == (1 << 64) - 1

    def test_mask_round_trip(self):
        u = Universe(6)
        assert points_of(mask_of([0, 2, 5], u)) == (0, 2, 5)
        with pytest.raises(DomainError):
            mask_of([6], u)

    def test_set_literal(self):
        assert set_literal(0) == "{}"
        assert set_literal(0b101) == "{0,2}"


class TestFamily:
    def test_canonical_order_enforced(self):
        with pytest.raises(DomainError):
            Family(Universe(3), (3, 1))
        with pytest.raises(DomainError):
            Family(Universe(3), (1, 1))

    def test_family_helper_dedupes(self):
        fam = family(Universe(3), [5, 1, 5, 0])
        assert fam.members == (0, 1, 5)
        assert 5 in fam and 2 not in fam
        assert fam.index_of(1) == 1
        with pytest.raises(DomainError):
            fam.index_of(2)


class TestEvenLogic:
    def test_counts(self):
        assert len(make_even_logic(4)) == 8
        assert len(make_even_logic(6)) == 32
        assert make_even_logic(2).members == (0, 3)

    def test_four_point_structure(self):
        members = make_even_logic(4).members
        sizes = sorted(m.bit_count() for m in members)
        assert sizes == [0, 2, 2, 2, 2, 2, 2, 4]

    @pytest.mark.parametrize("bad", [3, 0, 22, -2])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            make_even_logic(bad)


class TestConcreteClosure:
    def test_four_triples_close_to_ten_sets(self):
        fam = cases.mo4_family()
        gens = cases.mo4_generators()
        full = fam.universe.full_mask
        expected = sorted({0, full} | set(gens) | {full ^ g for g in gens})
        assert list(fam.members) == expected

    def test_empty_generators(self):
        fam = concrete_closure(Universe(5), [])
        assert fam.members == (0, 0b11111)

    def test_singletons_generate_powerset(self):
        fam = concrete_closure(Universe(3), [1, 2, 4])
        oracle = closure_by_sets(3, [{0}, {1}, {2}], with_delta=False)
        assert masks_to_sets(fam.members) == oracle
        assert len(fam) == 8

    def test_idempotent(self):
        fam = cases.mo4_family()
        again = concrete_closure(fam.universe, list(fam.members))
        assert again == fam


class TestDifferenceClosure:
    def test_mo15_structure(self):
        fam = cases.mo15_family()
        assert len(fam) == 32
        by_size = {}
        for m in fam.members:
            by_size.setdefault(m.bit_count(), []).append(m)
        assert {k: len(v) for k, v in by_size.items()} == {0: 1, 4: 15, 6: 15, 10: 1}
        four = by_size[4]
        assert all(a & b for i, a in enumerate(four) for b in four[i + 1:])
        # the 6-point members are exactly the complements of the 4-point ones
        full = fam.universe.full_mask
        assert sorted(full ^ m for m in four) == sorted(by_size[6])

    def test_empty_generators(self):
        fam = difference_closure(Universe(4), [])
        assert fam.members == (0, 0b1111)

    def test_two_sets_span_even_logic(self):
        u = Universe(6)
        pairs = [mask_of([i, j], u) for i in range(6) for j in range(i + 1, 6)]
        assert difference_closure(u, pairs) == make_even_logic(6)


class TestValidateLogic:
    def test_even_logic_flags(self):
        report = validate_logic(make_even_logic(6))
        assert report.is_logic
        assert report.difference_closed

    def test_mo4_is_logic_but_not_difference_closed(self):
        fam = cases.mo4_family()
        report = validate_logic(fam)
        assert report.is_logic
        assert not report.difference_closed
        a, b = cases.mo4_generators()[:2]
        assert (a ^ b) not in fam  # {0,3} is missing

    def test_missing_universe(self):
        report = validate_logic(family(Universe(3), [0]))
        assert not report.contains_x
        assert not report.is_logic

    def test_violation_witnesses(self):
        fam = family(Universe(3), [0b111, 0b001])
        report = validate_logic(fam)
        assert report.complement_violation == 0b001
        fam2 = family(Universe(3), [0, 0b001, 0b010, 0b110, 0b101, 0b111])
        report2 = validate_logic(fam2)
        assert report2.disjoint_union_violation == (0b001, 0b010)


class TestAtoms:
    def test_trivial_family(self):
        fam = family(Universe(4), [0, 0b1111])
        assert boolean_atoms(fam) == (0b1111,)
        assert atoms_are_pair_intersections(fam)

    def test_even_logic_atoms_are_singletons(self):
        fam = make_even_logic(6)
        assert boolean_atoms(fam) == tuple(1 << p for p in range(6))
        assert atoms_are_pair_intersections(fam)

    def test_mo4_atoms(self):
        atoms = boolean_atoms(cases.mo4_family())
        assert atoms == tuple(1 << p for p in range(6))

    def test_mo15_hypothesis_regression(self):
        # every singleton atom of the 32-member logic is a pairwise
        # intersection; frozen as a regression value
        fam = cases.mo15_family()
        assert boolean_atoms(fam) == tuple(1 << p for p in range(10))
        assert atoms_are_pair_intersections(fam) is True

    def test_alternative_reading_agrees_on_references(self):
        for fam in (make_even_logic(4), cases.mo15_family(), family(Universe(3), [0, 7])):
            literal = atoms_are_pair_intersections(fam, mode="literal")
            closure = atoms_are_pair_intersections(fam, mode="boolean-closure")
            assert isinstance(literal, bool) and isinstance(closure, bool)
            if literal:  # the literal reading implies the closure one
                assert closure

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            atoms_are_pair_intersections(make_even_logic(4), mode="nope")


def _random_generators(rng, n):
    count = rng.randint(0, 4)
    return [rng.randrange(1 << n) for _ in range(count)]


def test_difference_closure_matches_bruteforce():
    rng = random.Random(4242)
    for _ in range(60):
        n = rng.randint(2, 8)
        gens = _random_generators(rng, n)
        fam = difference_closure(Universe(n), gens)
        gen_sets = [set(points_of(g)) for g in gens]
        oracle = closure_by_sets(n, gen_sets, with_delta=True)
        assert masks_to_sets(fam.members) == oracle
        assert len(fam) & (len(fam) - 1) == 0  # power of two
        assert validate_logic(fam).is_logic
        assert is_difference_closed(fam)


def test_concrete_closure_contained_in_difference_closure():
    rng = random.Random(91)
    for _ in range(40):
        n = rng.randint(2, 7)
        gens = _random_generators(rng, n)
        u = Universe(n)
        concrete = concrete_closure(u, gens)
        delta = difference_closure(u, gens)
        assert set(concrete.members) <= set(delta.members)


@given(st.integers(2, 8), st.data())
@settings(max_examples=60, deadline=None)
def test_difference_closure_is_valid_logic(n, data):
    gens = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=4))
    fam = difference_closure(Universe(n), gens)
    report = validate_logic(fam)
    assert report.is_logic and report.difference_closed


class TestQlf:
    def test_round_trip(self):
        fam = cases.mo4_family()
        text = serialize_qlf(fam)
        assert family_from_qlf(text) == fam

    def test_round_trip_even_logic(self):
        fam = make_even_logic(4)
        assert family_from_qlf(serialize_qlf(fam)) == fam

    def test_named_serialization(self):
        fam = family(Universe(3), [0, 7])
        text = serialize_qlf(fam, names=["bottom", "top"])
        assert "set bottom" in text and "set top 0 1 2" in text
        doc = parse_qlf(text)
        assert doc.entries[0] == ("bottom", 0)

    def test_comments_and_blanks(self):
        text = "# a logic\nuniverse 3\n\nset A 0 1\n# done\n"
        doc = parse_qlf(text)
        assert doc.universe.size == 3
        assert doc.entries == (("A", 0b011),)

    @pytest.mark.parametrize("bad", [
        "set A 0 1",                     # set before universe
        "universe x",
        "universe 3\nset A 1 0",         # not increasing
        "universe 3\nset A 0 3",         # out of range
        "universe 3\nuniverse 3",
        "universe 3\nwhat A 0",
        "",
    ])
    def test_parse_errors(self, bad):
        with pytest.raises(FormatError):
            parse_qlf(bad)

    def test_duplicate_members_rejected(self):
        text = "universe 3\nset A 0\nset B 0\n"
        with pytest.raises(FormatError):
            family_from_qlf(text)


@given(st.integers(1, 6), st.data())
@settings(max_examples=80, deadline=None)
def test_qlf_round_trip_random(n, data):
    masks = data.draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1, max_size=10))
    fam = family(Universe(n), masks)
    assert family_from_qlf(serialize_qlf(fam)) == fam

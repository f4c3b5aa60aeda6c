import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cqlogic import cases
from cqlogic.errors import DomainError
from cqlogic.extend import (
    FeasibleExtension,
    InfeasibleExtension,
    classify_state,
    doubled_point_mass,
    point_masses_from_even_state,
    serialize_outcome,
    solve_signed_extension,
    solve_state_extension,
    subadditivity_verdict,
    uniform_atom_split,
)
from cqlogic.setlogic import Universe, family, make_even_logic
from cqlogic.states import sample_state_even, state_from_masses


def _uniform_state(n):
    return state_from_masses(make_even_logic(n), [F(1, n)] * n)


class TestPointMassFormula:
    def test_forced_negative_for_two_blocks(self):
        state = cases.even_negative_state(2)
        assert point_masses_from_even_state(state) == (F(-1, 2), F(1, 2), F(1, 2), F(1, 2))

    def test_uniform(self):
        assert point_masses_from_even_state(_uniform_state(4)) == (F(1, 4),) * 4

    def test_dirac(self):
        state = cases.dirac_state(6, 0)
        assert point_masses_from_even_state(state) == (F(1),) + (F(0),) * 5

    def test_two_point_convention(self):
        state = state_from_masses(make_even_logic(2), [F(1, 3), F(2, 3)])
        assert point_masses_from_even_state(state) == (F(1, 2), F(1, 2))

    def test_rejects_other_families(self):
        state = cases.mo4_state()
        with pytest.raises(DomainError):
            point_masses_from_even_state(state)


class TestDoubledPointMass:
    def test_uniform_triples(self):
        state = _uniform_state(4)
        for x, u, v in [(0, 1, 2), (3, 0, 1), (2, 3, 0)]:
            assert doubled_point_mass(state, x, u, v) == F(1, 2)

    def test_forced_negative_value(self):
        state = cases.even_negative_state(2)
        assert doubled_point_mass(state, 0, 1, 2) == F(-1)

    def test_dirac_value(self):
        state = cases.dirac_state(6, 0)
        assert doubled_point_mass(state, 0, 1, 2) == F(2)

    def test_rejects_repeated_points(self):
        state = _uniform_state(4)
        with pytest.raises(DomainError):
            doubled_point_mass(state, 1, 1, 2)


class TestSignedExtension:
    def test_mo4_infeasible_with_frozen_certificate(self):
        fam = cases.mo4_family()
        state = cases.mo4_state()
        out = solve_signed_extension(fam, state)
        assert isinstance(out, InfeasibleExtension)
        cert = out.certificate
        pairing = sum(c * v for c, v in zip(cert, state.values))
        assert pairing == -4
        # frozen: +1 on the four generators' side, -1 on the complements
        a, b, c, d = cases.mo4_generators()
        full = fam.universe.full_mask
        expected = {a: F(1), full ^ b: F(1), c: F(1), full ^ d: F(1),
                    full ^ a: F(-1), b: F(-1), full ^ c: F(-1), d: F(-1)}
        assert {m: x for m, x in zip(fam.members, cert) if x} == expected

    def test_mo15_two_valued_infeasible(self):
        state = cases.mo15_two_valued_state()
        out = solve_signed_extension(state.family, state)
        assert isinstance(out, InfeasibleExtension)
        n = state.family.universe.size
        for p in range(n):
            assert sum(c for c, m in zip(out.certificate, state.family.members)
                       if (m >> p) & 1) == 0
        assert sum(c * v for c, v in zip(out.certificate, state.values)) != 0

    def test_mo15_subadditive_infeasible(self):
        state = cases.mo15_subadditive_state()
        assert not solve_signed_extension(state.family, state).feasible

    def test_sampled_states_feasible_unique_and_match_formula(self):
        for n in (4, 6, 8):
            for i in range(12):
                mode = "nonneg" if i % 2 == 0 else "one_negative"
                state = sample_state_even(n, 2000 + i, mode)
                out = solve_signed_extension(state.family, state)
                assert isinstance(out, FeasibleExtension)
                assert out.unique
                assert out.witness == point_masses_from_even_state(state)

    def test_trivial_family_not_unique(self):
        fam = family(Universe(2), [0, 0b11])
        from cqlogic.states import state_table
        state = state_table(fam, [F(0), F(1)])
        out = solve_signed_extension(fam, state)
        assert isinstance(out, FeasibleExtension)
        assert not out.unique
        assert sum(out.witness) == 1


class TestStateExtension:
    def test_forced_negative_infeasible(self):
        state = cases.even_negative_state(2)
        assert isinstance(solve_state_extension(state.family, state), InfeasibleExtension)

    def test_nonneg_sample_feasible(self):
        state = sample_state_even(6, 3, "nonneg")
        out = solve_state_extension(state.family, state)
        assert isinstance(out, FeasibleExtension)
        assert all(v >= 0 for v in out.witness)
        assert sum(out.witness) == 1
        for m in state.family.members:
            assert sum(out.witness[p] for p in range(6) if (m >> p) & 1) == state.value_of(m)

    def test_mo15_subadditive_infeasible_without_certificate(self):
        state = cases.mo15_subadditive_state()
        out = solve_state_extension(state.family, state)
        assert isinstance(out, InfeasibleExtension)
        assert out.certificate is None


class TestUniformAtomSplit:
    def test_splits_inside_atoms(self):
        fam = family(Universe(4), [0, 0b0011, 0b1100, 0b1111])
        split = uniform_atom_split(fam, (F(1), F(0), F(0), F(0)))
        assert split == (F(1, 2), F(1, 2), F(0), F(0))

    def test_even_logic_atoms_are_points(self):
        state = sample_state_even(4, 9, "nonneg")
        witness = solve_signed_extension(state.family, state).witness
        assert uniform_atom_split(state.family, witness) == witness


class TestVerdict:
    def test_nonneg_sample_all_flags(self):
        state = sample_state_even(6, 21, "nonneg")
        verdict = subadditivity_verdict(state.family, state)
        assert verdict.atoms_hypothesis
        assert verdict.signed_extendable
        assert verdict.subadditive
        assert verdict.extension_is_state is True
        assert verdict.consistent

    def test_forced_negative_consistent(self):
        state = cases.even_negative_state(3)
        verdict = subadditivity_verdict(state.family, state)
        assert verdict.atoms_hypothesis
        assert verdict.signed_extendable
        assert not verdict.subadditive
        assert verdict.extension_is_state is False
        assert verdict.consistent

    def test_mo15_subadditive_without_extension(self):
        state = cases.mo15_subadditive_state()
        verdict = subadditivity_verdict(state.family, state)
        assert not verdict.signed_extendable
        assert verdict.extension_is_state is None
        assert verdict.subadditive
        assert verdict.consistent

    def test_requires_difference_closed(self):
        with pytest.raises(DomainError):
            subadditivity_verdict(cases.mo4_family(), cases.mo4_state())


class TestClassify:
    def test_mo4_summary(self):
        summary = classify_state(cases.mo4_family(), cases.mo4_state())
        assert not summary.signed_extendable
        assert not summary.state_extendable
        assert summary.subadditive is None
        assert summary.two_valued
        assert summary.dirac is None

    def test_dirac_summary(self):
        state = cases.dirac_state(6, 0)
        summary = classify_state(state.family, state)
        assert summary.signed_extendable and summary.state_extendable
        assert summary.subadditive is True
        assert summary.two_valued and summary.dirac == 0

    def test_mo15_subadditive_summary(self):
        state = cases.mo15_subadditive_state()
        summary = classify_state(state.family, state)
        assert not summary.signed_extendable
        assert not summary.state_extendable
        assert summary.subadditive is True


class TestSerializeOutcome:
    def test_feasible_line(self):
        out = FeasibleExtension((F(1, 2), F(-1, 4), F(3, 4)), True)
        assert serialize_outcome(out) == "FEASIBLE unique=1 masses=1/2,-1/4,3/4"

    def test_infeasible_with_certificate(self):
        out = InfeasibleExtension((F(0), F(1), F(-2)))
        assert serialize_outcome(out) == "INFEASIBLE cert=1:1,2:-2"

    def test_infeasible_bare(self):
        assert serialize_outcome(InfeasibleExtension(None)) == "INFEASIBLE"

    def test_machine_lines_deterministic(self):
        state = cases.mo4_state()
        one = serialize_outcome(solve_signed_extension(state.family, state))
        two = serialize_outcome(solve_signed_extension(state.family, state))
        assert one == two


# --- property checks -------------------------------------------------------

SEEDED_MODES = st.tuples(st.integers(0, 10_000), st.sampled_from(["nonneg", "one_negative"]))


@given(st.sampled_from([4, 6, 8]), SEEDED_MODES)
@settings(max_examples=40, deadline=None)
def test_choice_independence(n, seeded):
    seed, mode = seeded
    state = sample_state_even(n, seed, mode)
    for x in range(n):
        others = [p for p in range(n) if p != x]
        values = {doubled_point_mass(state, x, u, v)
                  for i, u in enumerate(others) for v in others[i + 1:]}
        assert len(values) == 1


@given(st.sampled_from([4, 6, 8]), SEEDED_MODES)
@settings(max_examples=40, deadline=None)
def test_pair_recovery_and_normalization(n, seeded):
    seed, mode = seeded
    state = sample_state_even(n, seed, mode)
    masses = point_masses_from_even_state(state)
    assert sum(masses) == 1
    for m in state.family.members:
        if m.bit_count() == 2:
            lo = (m & -m).bit_length() - 1
            hi = m.bit_length() - 1
            assert masses[lo] + masses[hi] == state.value_of(m)


@given(st.sampled_from([4, 6]), SEEDED_MODES)
@settings(max_examples=30, deadline=None)
def test_state_extension_iff_subadditive(n, seeded):
    from cqlogic.states import is_subadditive

    seed, mode = seeded
    state = sample_state_even(n, seed, mode)
    feasible = solve_state_extension(state.family, state).feasible
    assert feasible == is_subadditive(state.family, state).subadditive


def test_signed_solver_matches_independent_elimination_on_random_families():
    from cqlogic.setlogic import concrete_closure, difference_closure
    from cqlogic.states import complete_state, PartialState, validate_state
    from oracles import eliminate_consistent

    rng = random.Random(5150)
    checked = 0
    while checked < 25:
        n = rng.randint(3, 6)
        u = Universe(n)
        gens = [rng.randrange(1 << n) for _ in range(rng.randint(1, 3))]
        close = concrete_closure if rng.random() < 0.5 else difference_closure
        fam = close(u, gens)
        try:
            state = complete_state(fam, PartialState(
                ((fam.members[rng.randrange(len(fam.members))], F(rng.randint(0, 2), 2)),)))
        except Exception:
            continue
        out = solve_signed_extension(fam, state)
        A = [[F(1) if (m >> j) & 1 else F(0) for j in range(n)] for m in fam.members]
        assert out.feasible == eliminate_consistent(A, list(state.values))
        checked += 1

"""Extension of states over the full power set: the constructive point-mass
formula on even-set logics, exact signed/state extension solvers, and the
subadditivity equivalence verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError
from . import exactla
from .exactla import format_rational
from .setlogic import Family, atoms_are_pair_intersections, boolean_atoms, is_difference_closed, points_of
from .states import StateTable, dirac_point, is_subadditive, is_two_valued

ZERO = Fraction(0)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FeasibleExtension:
    """A point-mass witness; unique is True when the incidence system pins
    the masses completely (rank equals the universe size)."""

    witness: tuple[Fraction, ...]
    unique: bool

    @property
    def feasible(self) -> bool:
        return True


@dataclass(frozen=True)
class InfeasibleExtension:
    """No extension exists. For signed extensions the certificate gives
    rational coefficients over the members whose weighted indicator sum
    vanishes pointwise while the weighted state values do not."""

    certificate: Optional[tuple[Fraction, ...]] = None

    @property
    def feasible(self) -> bool:
        return False


ExtensionOutcome = Union[FeasibleExtension, InfeasibleExtension]


def _require_even_logic(state: StateTable) -> int:
    from .setlogic import make_even_logic

    fam = state.family
    n = fam.universe.size
    if n % 2 == 0 and 2 <= n <= 20 and fam is make_even_logic(n):
        return n
    if n % 2 != 0 or len(fam.members) != 1 << (n - 1) or any(
        m.bit_count() % 2 for m in fam.members
    ):
        raise DomainError("state must live on the even-set logic of an even universe")
    return n


def doubled_point_mass(state: StateTable, x: int, u: int, v: int) -> Fraction:
    """value({x,u}) + value({x,v}) - value({u,v}), i.e. twice the point mass
    at x. Independent of the choice of u, v (property-tested)."""
    _require_even_logic(state)
    if len({x, u, v}) != 3:
        raise DomainError("points x, u, v must be pairwise distinct")
    pair = lambda a, b: state.value_of((1 << a) | (1 << b))
    return pair(x, u) + pair(x, v) - pair(u, v)


def point_masses_from_even_state(state: StateTable) -> tuple[Fraction, ...]:
    """The signed point masses extending a state on the even-set logic.

    Each mass is half the doubled-mass combination taken at the two
    smallest points different from x; the induced set function agrees
    with the state on every member. For a two-point universe any split
    works and the symmetric (1/2, 1/2) is returned.
    """
    n = _require_even_logic(state)
    if n == 2:
        return (HALF, HALF)
    masses = []
    for x in range(n):
        u, v = [p for p in (0, 1, 2) if p != x][:2]
        masses.append(doubled_point_mass(state, x, u, v) / 2)
    return tuple(masses)


def _incidence_check(fam: Family, state: StateTable) -> None:
    if state.family != fam:
        raise DomainError("state is not defined on the given family")


def solve_signed_extension(fam: Family, state: StateTable) -> ExtensionOutcome:
    """Decide whether any signed point-mass vector restricts to the state.

    The member-incidence system is solved exactly; infeasibility comes
    with a normalized certificate, feasibility with the deterministic
    witness (free masses set to zero) and a uniqueness flag.
    """
    _incidence_check(fam, state)
    n = fam.universe.size
    outcome = exactla.solve_incidence(fam.members, state.values, n)
    if isinstance(outcome, exactla.AffineInconsistent):
        return InfeasibleExtension(outcome.certificate)
    return FeasibleExtension(outcome.particular, outcome.rank == n)


def solve_state_extension(fam: Family, state: StateTable) -> ExtensionOutcome:
    """Decide whether a nonnegative point-mass vector restricts to the state.

    Runs phase-1 simplex on the incidence system, exactly reduced to an
    independent subsystem first (the reduction preserves the solution
    set). No certificate is reported for the nonnegative case.
    """
    _incidence_check(fam, state)
    n = fam.universe.size
    reduced = exactla.reduce_incidence(fam.members, state.values, n)
    if reduced is None:
        return InfeasibleExtension(None)
    rows, rhs = reduced
    outcome = exactla.nonneg_feasible(rows, rhs)
    if isinstance(outcome, exactla.NonnegInfeasible):
        return InfeasibleExtension(None)
    return FeasibleExtension(outcome.witness, len(rows) == n)


def uniform_atom_split(fam: Family, witness: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Rebalance a witness uniformly inside each Boolean atom.

    Members only see atom totals, so this preserves the extension while
    making the reported masses canonical: the split is nonnegative
    exactly when every atom total is.
    """
    masses = list(witness)
    for atom in boolean_atoms(fam):
        pts = points_of(atom)
        share = sum(masses[p] for p in pts) / len(pts)
        for p in pts:
            masses[p] = share
    return tuple(masses)


@dataclass(frozen=True)
class SubadditivityVerdict:
    """Joint report tying subadditivity to the sign of the extension.

    consistent is False only if the atoms hypothesis holds, a signed
    extension exists, and subadditivity disagrees with the extension
    being a state - the combination the equivalence theorem rules out.
    """

    atoms_hypothesis: bool
    signed_extendable: bool
    subadditive: bool
    extension_is_state: Optional[bool]
    consistent: bool


def subadditivity_verdict(fam: Family, state: StateTable) -> SubadditivityVerdict:
    """Check the subadditivity/extension equivalence on one state.

    Requires a difference-closed family. When a signed witness exists,
    its atom-uniform split is tested for nonnegativity, and the doubled
    intersection mass identity value(A) + value(B) - value(A xor B) =
    2 * mass(A & B) is verified exactly over every member pair.
    """
    if not is_difference_closed(fam):
        raise DomainError("the equivalence check needs a difference-closed family")
    _incidence_check(fam, state)
    hypothesis = atoms_are_pair_intersections(fam)
    sub = is_subadditive(fam, state).subadditive
    outcome = solve_signed_extension(fam, state)
    extension_is_state: Optional[bool] = None
    if isinstance(outcome, FeasibleExtension):
        _verify_intersection_identity(fam, state, outcome.witness)
        split = uniform_atom_split(fam, outcome.witness)
        extension_is_state = all(v >= 0 for v in split)
    consistent = (
        not hypothesis
        or not outcome.feasible
        or sub == extension_is_state
    )
    return SubadditivityVerdict(
        atoms_hypothesis=hypothesis,
        signed_extendable=outcome.feasible,
        subadditive=sub,
        extension_is_state=extension_is_state,
        consistent=consistent,
    )


def _verify_intersection_identity(fam: Family, state: StateTable, witness: tuple[Fraction, ...]) -> None:
    """value(A) + value(B) - value(A xor B) must equal twice the witness mass
    of A & B for every member pair; guaranteed for any additive extension,
    so a failure means a solver bug."""
    state_den, state_nums = state._integer_form
    mass_den = math.lcm(*[v.denominator for v in witness]) if witness else 1
    mass_nums = [int(v * mass_den) for v in witness]
    n = fam.universe.size
    if n <= 20:
        subset_sum = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            subset_sum[mask] = subset_sum[mask ^ low] + mass_nums[low.bit_length() - 1]
        mass_of = subset_sum.__getitem__
    else:
        def mass_of(mask: int) -> int:
            total = 0
            while mask:
                low = mask & -mask
                total += mass_nums[low.bit_length() - 1]
                mask ^= low
            return total
    members = fam.members
    index = {m: i for i, m in enumerate(members)}
    for i, a in enumerate(members):
        na = state_nums[i]
        for b, nb in zip(members[i:], state_nums[i:]):
            lhs = na + nb - state_nums[index[a ^ b]]
            if lhs * mass_den != 2 * mass_of(a & b) * state_den:
                raise RuntimeError(
                    f"intersection identity failed on {a:#x}, {b:#x}: solver witness is not additive")


@dataclass(frozen=True)
class StateSummary:
    """One-call classification used by the CLI and the service."""

    signed_extendable: bool
    state_extendable: bool
    subadditive: Optional[bool]  # None when the family is not difference-closed
    two_valued: bool
    dirac: Optional[int]


def classify_state(fam: Family, state: StateTable) -> StateSummary:
    _incidence_check(fam, state)
    signed = solve_signed_extension(fam, state)
    state_ext = solve_state_extension(fam, state)
    sub = is_subadditive(fam, state).subadditive if is_difference_closed(fam) else None
    return StateSummary(
        signed_extendable=signed.feasible,
        state_extendable=state_ext.feasible,
        subadditive=sub,
        two_valued=is_two_valued(state),
        dirac=dirac_point(state),
    )


def serialize_outcome(outcome: ExtensionOutcome) -> str:
    """Single-line machine form of an extension outcome.

    FEASIBLE unique=<0|1> masses=p1/q1,...   or
    INFEASIBLE [cert=<member-index>:<coeff>,...] (nonzero entries only).
    """
    if isinstance(outcome, FeasibleExtension):
        masses = ",".join(format_rational(v) for v in outcome.witness)
        return f"FEASIBLE unique={int(outcome.unique)} masses={masses}"
    if outcome.certificate is None:
        return "INFEASIBLE"
    entries = ",".join(
        f"{i}:{format_rational(c)}" for i, c in enumerate(outcome.certificate) if c
    )
    return f"INFEASIBLE cert={entries}"

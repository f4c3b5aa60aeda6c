"""Built-in reference inputs: the small logics and states the library's
reproduction suite and tests exercise.

mo4: the ten-member logic generated by four overlapping triples on six
points (a set representation of the "Chinese lantern" MO4), with a
two-valued state that has no signed extension.

mo15: the 32-member difference-closed logic on ten points representing
MO15, with two states - a two-valued one and a subadditive one - neither
of which extends as a signed measure.

even_negative: the state on the even-set logic of 2k points whose unique
signed extension puts mass -1/(2(k-1)) on the first point.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError
from .setlogic import Family, Universe, concrete_closure, difference_closure, mask_of, make_even_logic
from .states import PartialState, StateTable, complete_state, state_from_masses

HALF = Fraction(1, 2)


def _masks(universe: Universe, *point_sets):
    return [mask_of(points, universe) for points in point_sets]


MO4_UNIVERSE = Universe(6)
MO4_GENERATOR_POINTS = ((0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 2, 4))


def mo4_generators() -> list[int]:
    return _masks(MO4_UNIVERSE, *MO4_GENERATOR_POINTS)


def mo4_family() -> Family:
    return concrete_closure(MO4_UNIVERSE, mo4_generators())


def mo4_state() -> StateTable:
    a, b, c, d = mo4_generators()
    return complete_state(mo4_family(), PartialState((
        (a, Fraction(0)), (b, Fraction(1)), (c, Fraction(0)), (d, Fraction(1)),
    )))


MO15_UNIVERSE = Universe(10)
MO15_GENERATOR_POINTS = ((0, 1, 4, 7), (0, 2, 5, 8), (0, 1, 2, 3), (0, 4, 5, 6))


def mo15_generators() -> list[int]:
    return _masks(MO15_UNIVERSE, *MO15_GENERATOR_POINTS)


def mo15_family() -> Family:
    return difference_closure(MO15_UNIVERSE, mo15_generators())


def mo15_two_valued_state() -> StateTable:
    a, b, c, d = mo15_generators()
    return complete_state(mo15_family(), PartialState((
        (a, Fraction(1)), (c, Fraction(1)), (a ^ b, Fraction(1)),
        (b, Fraction(0)), (d, Fraction(0)), (c ^ d, Fraction(0)),
    )))


def mo15_subadditive_state() -> StateTable:
    a, b, c, _ = mo15_generators()
    return complete_state(mo15_family(), PartialState((
        (a, Fraction(1, 3)), (b, Fraction(1, 4)), (c, Fraction(2, 5)),
    )))


def even_negative_state(k: int) -> StateTable:
    """State on the even-set logic of 2k points with pair values 0 on {0,c}
    and 1/(k-1) elsewhere; its unique extension has one negative mass."""
    if k < 2 or k > 6:
        raise DomainError("k must be in 2..6")
    n = 2 * k
    unit = Fraction(1, 2 * (k - 1))
    masses = [-unit] + [unit] * (n - 1)
    return state_from_masses(make_even_logic(n), masses)


def dirac_state(n: int, point: int) -> StateTable:
    """The two-valued state on the even-set logic indicating one point."""
    fam = make_even_logic(n)
    masses = [Fraction(1) if p == point else Fraction(0) for p in range(n)]
    return state_from_masses(fam, masses)

"""States on a family: validation, completion of partial assignments,
subadditivity, point-mass constructions, and seeded samplers.

A state assigns a rational in [0, 1] to every member, vanishes on the
empty set, gives the universe mass 1, and is additive on disjoint
member pairs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, FormatError, ValidationError
from .exactla import format_rational, parse_rational
from .setlogic import Family, make_even_logic, set_literal

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class StateTable:
    """One rational value per family member, aligned with canonical order."""

    family: Family
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.family.members):
            raise DomainError("state table must assign exactly one value per member")

    def value_of(self, mask: int) -> Fraction:
        return self.values[self.family.index_of(mask)]

    @property
    def _integer_form(self) -> tuple[int, list[int]]:
        """values as (common denominator, numerators) for integer-only scans."""
        cached = self.__dict__.get("_integer_form_cache")
        if cached is None:
            den = math.lcm(*[v.denominator for v in self.values]) if self.values else 1
            cached = (den, [int(v * den) for v in self.values])
            self.__dict__["_integer_form_cache"] = cached
        return cached


@dataclass(frozen=True)
class PartialState:
    """A few (member, value) assignments; the rest is filled by complete_state."""

    assignments: tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class StateViolation:
    kind: str  # "negative" | "empty" | "total" | "additivity"
    members: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class StateReport:
    valid: bool
    violation: Optional[StateViolation] = None


def validate_state(fam: Family, values: Sequence[Fraction]) -> StateReport:
    """Check nonnegativity, value(empty) = 0, value(X) = 1, and additivity
    over every disjoint member pair. Stops at the first violation."""
    if len(values) != len(fam.members):
        raise DomainError("values must align with the family members")
    values = [Fraction(v) for v in values]
    lookup = dict(zip(fam.members, values))
    for m, v in zip(fam.members, values):
        if v < 0:
            return StateReport(False, StateViolation(
                "negative", (m,), f"value {format_rational(v)} of {set_literal(m)} is negative"))
    if 0 in lookup and lookup[0] != 0:
        return StateReport(False, StateViolation(
            "empty", (0,), f"empty set has value {format_rational(lookup[0])}, expected 0"))
    full = fam.universe.full_mask
    if full in lookup and lookup[full] != 1:
        return StateReport(False, StateViolation(
            "total", (full,), f"universe has value {format_rational(lookup[full])}, expected 1"))
    members = fam.members
    for i, a in enumerate(members):
        va = values[i]
        for b, vb in zip(members[i:], values[i:]):
            if a & b == 0:
                union = a | b
                vu = lookup.get(union)
                if vu is not None and vu != va + vb:
                    return StateReport(False, StateViolation(
                        "additivity", (a, b),
                        f"value({set_literal(a | b)}) = {format_rational(vu)} but "
                        f"value({set_literal(a)}) + value({set_literal(b)}) = "
                        f"{format_rational(va + vb)}"))
    return StateReport(True)


def state_table(fam: Family, values: Sequence[Fraction]) -> StateTable:
    """Build a StateTable after running full validation."""
    report = validate_state(fam, values)
    if not report.valid:
        raise ValidationError(report.violation.message, report.violation)
    return StateTable(fam, tuple(Fraction(v) for v in values))


def complete_state(fam: Family, partial: PartialState, default: Fraction = HALF) -> StateTable:
    """Fill a partial assignment to a full validated state.

    Members whose complement was assigned get 1 - that value; any
    complement pair left untouched gets (default, 1 - default); the
    empty set and the universe get 0 and 1 unless assigned explicitly.
    Validation failure raises with the violated constraint attached.
    """
    assigned: dict[int, Fraction] = {}
    for mask, value in partial.assignments:
        if mask not in fam:
            raise DomainError(f"assigned mask {set_literal(mask)} is not a member")
        if mask in assigned:
            raise DomainError(f"mask {set_literal(mask)} assigned twice")
        assigned[mask] = Fraction(value)
    full = fam.universe.full_mask
    values: dict[int, Fraction] = dict(assigned)
    values.setdefault(0, ZERO)
    values.setdefault(full, ONE)
    for m in fam.members:
        if m not in values and (full ^ m) in assigned:
            values[m] = 1 - assigned[full ^ m]
    for m in fam.members:
        if m not in values:
            values[m] = Fraction(default)
            comp = full ^ m
            if comp in fam and comp not in values:
                values[comp] = 1 - Fraction(default)
    return state_table(fam, [values[m] for m in fam.members])


def state_from_masses(fam: Family, masses: Sequence[Fraction]) -> StateTable:
    """The state induced by point masses: value(A) = sum of masses in A.

    The masses must sum to 1 and every induced member value must come
    out nonnegative; otherwise the masses do not restrict to a state.
    """
    n = fam.universe.size
    if len(masses) != n:
        raise DomainError(f"expected {n} masses, got {len(masses)}")
    masses = [Fraction(v) for v in masses]
    if sum(masses) != 1:
        raise DomainError("masses must sum to 1")
    den = math.lcm(*[v.denominator for v in masses])
    nums = [int(v * den) for v in masses]
    values = []
    for mask in fam.members:
        m, total = mask, 0
        while m:
            low = m & -m
            total += nums[low.bit_length() - 1]
            m ^= low
        if total < 0:
            raise ValidationError(
                f"induced value of {set_literal(mask)} is negative "
                f"({format_rational(Fraction(total, den))})",
                StateViolation("negative", (mask,), "negative induced value"))
        values.append(Fraction(total, den))
    return StateTable(fam, tuple(values))


def induced_values(masses: Sequence[Fraction], masks: Sequence[int]) -> list[Fraction]:
    """Evaluate the additive set function of a mass vector on given masks."""
    out = []
    for mask in masks:
        m, total = mask, ZERO
        while m:
            low = m & -m
            total += masses[low.bit_length() - 1]
            m ^= low
        out.append(total)
    return out


@dataclass(frozen=True)
class SubadditivityResult:
    subadditive: bool
    witness: Optional[tuple[int, int]] = None  # first violating pair, canonical order


def is_subadditive(fam: Family, state: StateTable) -> SubadditivityResult:
    """Whether value(A xor B) <= value(A) + value(B) for all member pairs.

    Only defined on difference-closed families. The scan runs on integer
    numerators over a common denominator, so it is exact and fast; the
    first violating pair (in canonical order) is reported.
    """
    from .setlogic import is_difference_closed

    if state.family != fam:
        raise DomainError("state is not defined on the given family")
    if not is_difference_closed(fam):
        raise DomainError("subadditivity needs a difference-closed family")
    _, nums = state._integer_form
    members = fam.members
    size = fam.universe.full_mask + 1
    by_mask: dict[int, int] | list[int]
    if size <= 1 << 20:
        by_mask = [0] * size
        for m, v in zip(members, nums):
            by_mask[m] = v
    else:
        by_mask = dict(zip(members, nums))
    for i, a in enumerate(members):
        va = nums[i]
        for b, vb in zip(members[i:], nums[i:]):
            if va + vb < by_mask[a ^ b]:
                return SubadditivityResult(False, (a, b))
    return SubadditivityResult(True)


def is_two_valued(state: StateTable) -> bool:
    return all(v == 0 or v == 1 for v in state.values)


def dirac_point(state: StateTable) -> Optional[int]:
    """The point whose membership indicator the state is, if any."""
    for p in range(state.family.universe.size):
        bit = 1 << p
        if all(v == (ONE if m & bit else ZERO) for m, v in zip(state.family.members, state.values)):
            return p
    return None


def mass_vector_is_even_valid(masses: Sequence[Fraction]) -> bool:
    """Closed form for when point masses induce a state on the even-set logic:
    at most one mass is negative, and its magnitude is at most the minimum
    of the others."""
    masses = [Fraction(v) for v in masses]
    negatives = [v for v in masses if v < 0]
    if not negatives:
        return True
    if len(negatives) > 1:
        return False
    rest = [v for v in masses if v >= 0]
    return -negatives[0] <= min(rest)


SAMPLE_MODES = ("nonneg", "one_negative")
_MAX_DRAW = 20
_RESAMPLE_CAP = 1000


def sample_state_even(n: int, seed: int, mode: str) -> StateTable:
    """Draw a deterministic pseudo-random state on the even-set logic.

    mode "nonneg": integer masses in [0, 20], normalized to sum 1 (the
    induced state is automatically valid). mode "one_negative": exactly
    one point gets a strictly negative mass, bounded by the minimum of
    the others, which is precisely the condition for the induced values
    to stay nonnegative on every even set.
    """
    if n % 2 != 0 or not 4 <= n <= 12:
        raise DomainError(f"sampler needs an even universe size in 4..12, got {n}")
    if mode not in SAMPLE_MODES:
        raise DomainError(f"unknown sampler mode {mode!r}")
    rng = random.Random(seed)
    fam = make_even_logic(n)
    for _ in range(_RESAMPLE_CAP):
        if mode == "nonneg":
            draws = [rng.randint(0, _MAX_DRAW) for _ in range(n)]
        else:
            where = rng.randrange(n)
            draws = [rng.randint(1, _MAX_DRAW) for _ in range(n)]
            draws[where] = -rng.randint(1, min(d for i, d in enumerate(draws) if i != where))
        total = sum(draws)
        if total <= 0:
            continue
        masses = [Fraction(d, total) for d in draws]
        if not mass_vector_is_even_valid(masses):
            continue
        return state_from_masses(fam, masses)
    raise RuntimeError("sampler failed to produce a valid state in 1000 attempts")


# --- QSF file format -------------------------------------------------------
#
# Line-oriented UTF-8; '#' starts a comment line.
#   state over <logic-file-path>
#   value {i1,i2,...} p/q          one line per member; {} is the empty set


@dataclass(frozen=True)
class QsfDocument:
    logic_path: str
    assignments: tuple[tuple[int, Fraction], ...]


def parse_qsf(text: str, fam: Family) -> QsfDocument:
    logic_path: Optional[str] = None
    assignments: list[tuple[int, Fraction]] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "state":
            if len(fields) != 3 or fields[1] != "over":
                raise FormatError(f"line {lineno}: expected 'state over <path>'")
            if logic_path is not None:
                raise FormatError(f"line {lineno}: repeated 'state over' line")
            logic_path = fields[2]
        elif fields[0] == "value":
            if logic_path is None:
                raise FormatError(f"line {lineno}: 'value' before 'state over'")
            if len(fields) != 3:
                raise FormatError(f"line {lineno}: expected 'value {{...}} p/q'")
            mask = _parse_set_literal(fields[1], lineno)
            if mask not in fam:
                raise FormatError(f"line {lineno}: {fields[1]} is not a member of the logic")
            if mask in seen:
                raise FormatError(f"line {lineno}: duplicate value for {fields[1]}")
            seen.add(mask)
            try:
                value = parse_rational(fields[2])
            except FormatError as exc:
                raise FormatError(f"line {lineno}: {exc}") from exc
            assignments.append((mask, value))
        else:
            raise FormatError(f"line {lineno}: unknown directive {fields[0]!r}")
    if logic_path is None:
        raise FormatError("missing 'state over' line")
    return QsfDocument(logic_path, tuple(assignments))


def _parse_set_literal(token: str, lineno: int) -> int:
    if not (token.startswith("{") and token.endswith("}")):
        raise FormatError(f"line {lineno}: bad set literal {token!r}")
    inner = token[1:-1]
    if not inner:
        return 0
    mask, prev = 0, -1
    for part in inner.split(","):
        if not part.isdigit():
            raise FormatError(f"line {lineno}: bad index {part!r} in set literal")
        idx = int(part)
        if idx <= prev:
            raise FormatError(f"line {lineno}: set literal indices must be strictly increasing")
        mask |= 1 << idx
        prev = idx
    return mask


def state_from_qsf(text: str, fam: Family) -> StateTable:
    """Parse a QSF document that assigns a value to every member."""
    doc = parse_qsf(text, fam)
    lookup = dict(doc.assignments)
    missing = [m for m in fam.members if m not in lookup]
    if missing:
        raise FormatError(f"no value for member {set_literal(missing[0])}")
    return StateTable(fam, tuple(lookup[m] for m in fam.members))


def serialize_qsf(state: StateTable, logic_path: str) -> str:
    lines = [f"state over {logic_path}"]
    for mask, value in zip(state.family.members, state.values):
        lines.append(f"value {set_literal(mask)} {format_rational(value)}")
    return "\n".join(lines) + "\n"

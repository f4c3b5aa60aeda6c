"""Finite universes, subsets as bitmasks, and concrete quantum logics.

A family of subsets of {0, ..., n-1} is a concrete quantum logic when it
contains the whole universe and is closed under complements and under
unions of disjoint pairs. Subsets are plain ints used as bitmasks, so
closure computations are word operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import DomainError, FormatError

MAX_UNIVERSE = 64
MAX_FAMILY = 1 << 20  # resource guard for runaway closures


@dataclass(frozen=True)
class Universe:
    """The ground set {0, ..., size-1}."""

    size: int

    def __post_init__(self):
        if not 1 <= self.size <= MAX_UNIVERSE:
            raise DomainError(f"universe size must be in 1..{MAX_UNIVERSE}, got {self.size}")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def check_mask(self, mask: int) -> int:
        if mask < 0 or mask & ~self.full_mask:
            raise DomainError(f"mask {mask:#x} has points outside the universe of size {self.size}")
        return mask


def mask_of(points: Iterable[int], universe: Universe) -> int:
    mask = 0
    for p in points:
        if not 0 <= p < universe.size:
            raise DomainError(f"point {p} outside universe of size {universe.size}")
        mask |= 1 << p
    return mask


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def set_literal(mask: int) -> str:
    """Render a mask as "{i1,i2,...}" with ascending indices; "{}" is empty."""
    return "{" + ",".join(str(p) for p in points_of(mask)) + "}"


@dataclass(frozen=True)
class Family:
    """A deduplicated collection of subsets in canonical (ascending mask) order."""

    universe: Universe
    members: tuple[int, ...]

    def __post_init__(self):
        prev = -1
        for m in self.members:
            self.universe.check_mask(m)
            if m <= prev:
                raise DomainError("family members must be strictly increasing bitmasks")
            prev = m

    def __contains__(self, mask: int) -> bool:
        return mask in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    @property
    def _member_set(self) -> frozenset[int]:
        cached = self.__dict__.get("_member_set_cache")
        if cached is None:
            cached = frozenset(self.members)
            self.__dict__["_member_set_cache"] = cached
        return cached

    def index_of(self, mask: int) -> int:
        try:
            return self._member_index[mask]
        except KeyError:
            raise DomainError(f"{set_literal(mask)} is not a member of the family") from None

    @property
    def _member_index(self) -> dict[int, int]:
        cached = self.__dict__.get("_member_index_cache")
        if cached is None:
            cached = {m: i for i, m in enumerate(self.members)}
            self.__dict__["_member_index_cache"] = cached
        return cached

    def complement(self, mask: int) -> int:
        return self.universe.full_mask ^ mask


def family(universe: Universe, masks: Iterable[int]) -> Family:
    """Canonicalize an iterable of masks (dedupe + sort) into a Family."""
    return Family(universe, tuple(sorted(set(masks))))


@lru_cache(maxsize=None)
def make_even_logic(n: int) -> Family:
    """The logic of all even-cardinality subsets of an n-point universe."""
    if n % 2 != 0 or not 2 <= n <= 20:
        raise DomainError(f"even logic needs an even universe size in 2..20, got {n}")
    members = tuple(m for m in range(1 << n) if m.bit_count() % 2 == 0)
    return Family(Universe(n), members)


def concrete_closure(universe: Universe, generators: Sequence[int]) -> Family:
    """Least family containing the generators and X, closed under complement
    and union of disjoint pairs (worklist fixed point)."""
    full = universe.full_mask
    members = {full}
    members.update(universe.check_mask(g) for g in generators)
    while True:
        fresh = {full ^ m for m in members} - members
        current = sorted(members | fresh)
        for i, a in enumerate(current):
            for b in current[i:]:
                if a & b == 0:
                    u = a | b
                    if u not in members:
                        fresh.add(u)
        if not fresh:
            return Family(universe, tuple(sorted(members)))
        members |= fresh
        if len(members) > MAX_FAMILY:
            raise DomainError(f"closure exceeded {MAX_FAMILY} members")


def difference_closure(universe: Universe, generators: Sequence[int]) -> Family:
    """Least difference-closed logic containing the generators.

    A symmetric-difference-closed family containing X is automatically a
    concrete logic (complement = XOR with X, empty set = A XOR A, and a
    disjoint union is a symmetric difference), and it is exactly the
    GF(2) linear span of generators + X. Computed by GF(2) elimination
    on the bitmasks; the result has 2^rank members.
    """
    basis: list[int] = []
    for g in list(generators) + [universe.full_mask]:
        v = universe.check_mask(g)
        for row in basis:
            v = min(v, v ^ row)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    if 1 << len(basis) > MAX_FAMILY:
        raise DomainError(f"difference closure exceeded {MAX_FAMILY} members")
    span = {0}
    for row in basis:
        span |= {x ^ row for x in span}
    return Family(universe, tuple(sorted(span)))


def is_difference_closed(fam: Family) -> bool:
    """True iff the family is a difference-closed logic.

    Closure under XOR makes the family a GF(2) subspace, so it suffices
    that it contains 0 and X and has exactly 2^rank members.
    """
    if 0 not in fam or fam.universe.full_mask not in fam:
        return False
    rank = 0
    basis: list[int] = []
    for m in fam.members:
        v = m
        for row in basis:
            v = min(v, v ^ row)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
            rank += 1
    return len(fam) == 1 << rank


@dataclass(frozen=True)
class LogicReport:
    """Outcome of checking the concrete-logic axioms exhaustively."""

    contains_x: bool
    complement_closed: bool
    disjoint_union_closed: bool
    difference_closed: bool
    complement_violation: Optional[int] = None
    disjoint_union_violation: Optional[tuple[int, int]] = None

    @property
    def is_logic(self) -> bool:
        return self.contains_x and self.complement_closed and self.disjoint_union_closed


def validate_logic(fam: Family) -> LogicReport:
    """Check the three logic axioms plus difference-closedness, O(|family|^2)."""
    full = fam.universe.full_mask
    contains_x = full in fam
    complement_violation = next((m for m in fam.members if (full ^ m) not in fam), None)
    disjoint_violation = None
    members = fam.members
    for i, a in enumerate(members):
        for b in members[i:]:
            if a & b == 0 and (a | b) not in fam:
                disjoint_violation = (a, b)
                break
        if disjoint_violation:
            break
    difference_closed = all(
        (a ^ b) in fam for i, a in enumerate(members) for b in members[i:]
    )
    return LogicReport(
        contains_x=contains_x,
        complement_closed=complement_violation is None,
        disjoint_union_closed=disjoint_violation is None,
        difference_closed=difference_closed,
        complement_violation=complement_violation,
        disjoint_union_violation=disjoint_violation,
    )


def boolean_atoms(fam: Family) -> tuple[int, ...]:
    """Atoms of the Boolean algebra generated by the family.

    Points with the same membership signature across all members are
    indistinguishable; the signature classes are the atoms. Returned as
    masks ordered by their smallest point.
    """
    blocks: dict[tuple[int, ...], int] = {}
    for p in range(fam.universe.size):
        signature = tuple((m >> p) & 1 for m in fam.members)
        blocks[signature] = blocks.get(signature, 0) | (1 << p)
    return tuple(sorted(blocks.values(), key=lambda m: (m & -m).bit_length()))


def atoms_are_pair_intersections(fam: Family, mode: str = "literal") -> bool:
    """Whether pairwise intersections of members generate all Boolean atoms.

    mode "literal" (the default, used everywhere): every atom equals
    A & B for some members A, B, pairs with A = B included. mode
    "boolean-closure": the Boolean algebra generated by all pairwise
    intersections has the same atoms as the one generated by the family.
    """
    members = fam.members
    if mode == "literal":
        remaining = set(boolean_atoms(fam))
        for i, a in enumerate(members):
            for b in members[i:]:
                remaining.discard(a & b)
            if not remaining:
                return True
        return not remaining
    if mode == "boolean-closure":
        intersections = sorted({a & b for i, a in enumerate(members) for b in members[i:]})
        inter_fam = Family(fam.universe, tuple(intersections))
        return boolean_atoms(inter_fam) == boolean_atoms(fam)
    raise DomainError(f"unknown mode {mode!r}")


# --- QLF file format -------------------------------------------------------
#
# Line-oriented UTF-8; '#' starts a comment line.
#   universe <n>
#   set <name> <i1> <i2> ...      indices strictly increasing, in [0, n)


@dataclass(frozen=True)
class QlfDocument:
    universe: Universe
    entries: tuple[tuple[str, int], ...]  # (name, mask) in file order

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask for _, mask in self.entries)


def parse_qlf(text: str) -> QlfDocument:
    universe: Optional[Universe] = None
    entries: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "universe":
            if universe is not None:
                raise FormatError(f"line {lineno}: repeated universe line")
            if len(fields) != 2 or not fields[1].isdigit():
                raise FormatError(f"line {lineno}: expected 'universe <n>'")
            try:
                universe = Universe(int(fields[1]))
            except DomainError as exc:
                raise FormatError(f"line {lineno}: {exc}") from exc
        elif fields[0] == "set":
            if universe is None:
                raise FormatError(f"line {lineno}: 'set' before 'universe'")
            if len(fields) < 2:
                raise FormatError(f"line {lineno}: expected 'set <name> <i1> ...'")
            name = fields[1]
            mask, prev = 0, -1
            for tok in fields[2:]:
                if not tok.isdigit():
                    raise FormatError(f"line {lineno}: bad index {tok!r}")
                idx = int(tok)
                if idx <= prev:
                    raise FormatError(f"line {lineno}: indices must be strictly increasing")
                if idx >= universe.size:
                    raise FormatError(f"line {lineno}: index {idx} outside universe")
                mask |= 1 << idx
                prev = idx
            entries.append((name, mask))
        else:
            raise FormatError(f"line {lineno}: unknown directive {fields[0]!r}")
    if universe is None:
        raise FormatError("missing 'universe' line")
    return QlfDocument(universe, tuple(entries))


def family_from_qlf(text: str) -> Family:
    doc = parse_qlf(text)
    seen = set()
    for name, mask in doc.entries:
        if mask in seen:
            raise FormatError(f"duplicate member {set_literal(mask)} (as {name!r})")
        seen.add(mask)
    return Family(doc.universe, tuple(sorted(seen)))


def serialize_qlf(fam: Family, names: Optional[Sequence[str]] = None) -> str:
    """Emit members in canonical order, named S0, S1, ... unless supplied."""
    if names is not None and len(names) != len(fam.members):
        raise DomainError("one name per member required")
    lines = [f"universe {fam.universe.size}"]
    for i, mask in enumerate(fam.members):
        name = names[i] if names is not None else f"S{i}"
        pts = " ".join(str(p) for p in points_of(mask))
        lines.append(f"set {name} {pts}".rstrip())
    return "\n".join(lines) + "\n"

"""Exact rational linear algebra: affine solving with infeasibility
certificates, and nonnegative feasibility via phase-1 simplex.

Everything here works over `fractions.Fraction`; there is no floating
point anywhere, so all results are bit-exact and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError, FormatError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(p: int, q: int = 1) -> Fraction:
    """Build the normalized fraction p/q (positive denominator, lowest terms)."""
    if q == 0:
        raise DomainError("rational with zero denominator")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1. No spaces."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse the "p/q" / "p" text form (optional leading minus, no spaces)."""
    body = text[1:] if text.startswith("-") else text
    num, sep, den = body.partition("/")
    if not num.isdigit() or (sep and not den.isdigit()):
        raise FormatError(f"bad rational literal: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational literal: {text!r}") from exc


@dataclass(frozen=True)
class AffineSolution:
    """A consistent system: one particular solution plus a nullspace basis.

    particular solves A.x = b with every free variable set to zero; the
    basis vectors span {v : A.v = 0} and number (columns - rank).
    """

    particular: tuple[Fraction, ...]
    nullspace_basis: tuple[tuple[Fraction, ...], ...]
    rank: int


@dataclass(frozen=True)
class AffineInconsistent:
    """An inconsistent system, with a certificate c such that
    c.A = 0 while c.b != 0 (both checked exactly)."""

    certificate: tuple[Fraction, ...]


AffineOutcome = Union[AffineSolution, AffineInconsistent]


@dataclass(frozen=True)
class NonnegFeasible:
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class NonnegInfeasible:
    pass


NonnegOutcome = Union[NonnegFeasible, NonnegInfeasible]


def normalize_primitive(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a nonzero rational vector to the smallest integer vector whose
    first nonzero entry is positive."""
    denoms = [v.denominator for v in vec]
    scale = math.lcm(*denoms) if denoms else 1
    ints = [int(v * scale) for v in vec]
    g = math.gcd(*ints)
    if g == 0:
        raise DomainError("cannot normalize the zero vector")
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


class _Echelon:
    """Incremental reduced row-echelon form over the rationals.

    Rows are fed one at a time; the basis is kept fully reduced (each
    pivot column is zero in every other basis row), sorted by pivot
    column, with unit pivots. Column pivots are always the leftmost
    usable column, which makes every derived quantity deterministic.
    """

    def __init__(self, width: int):
        self.width = width
        self.pivots: list[int] = []
        self.rows: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: list[Fraction], rhs: Fraction) -> tuple[list[Fraction], Fraction]:
        for p, row, r in zip(self.pivots, self.rows, self.rhs):
            c = vec[p]
            if c:
                vec = [a - c * x for a, x in zip(vec, row)]
                rhs -= c * r
        return vec, rhs

    def insert(self, vec: list[Fraction], rhs: Fraction) -> bool:
        """Reduce a row against the basis and absorb it.

        Returns True if the row added a pivot, False if it reduced away.
        Raises _InconsistentRow if it reduced to 0 = nonzero.
        """
        vec, rhs = self.reduce(vec, rhs)
        pivot = next((j for j, v in enumerate(vec) if v), None)
        if pivot is None:
            if rhs:
                raise _InconsistentRow
            return False
        inv = 1 / vec[pivot]
        vec = [v * inv for v in vec]
        rhs *= inv
        for i, row in enumerate(self.rows):
            c = row[pivot]
            if c:
                self.rows[i] = [a - c * x for a, x in zip(row, vec)]
                self.rhs[i] -= c * rhs
        at = next((i for i, p in enumerate(self.pivots) if p > pivot), len(self.pivots))
        self.pivots.insert(at, pivot)
        self.rows.insert(at, vec)
        self.rhs.insert(at, rhs)
        return True

    def solution(self) -> AffineSolution:
        particular = [ZERO] * self.width
        for p, r in zip(self.pivots, self.rhs):
            particular[p] = r
        free = [j for j in range(self.width) if j not in set(self.pivots)]
        basis = []
        for f in free:
            v = [ZERO] * self.width
            v[f] = ONE
            for p, row in zip(self.pivots, self.rows):
                v[p] = -row[f]
            basis.append(normalize_primitive(v))
        return AffineSolution(tuple(particular), tuple(basis), self.rank)


class _InconsistentRow(Exception):
    pass


def _check_shape(matrix: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> int:
    if len(matrix) != len(b):
        raise DomainError("matrix and right-hand side disagree on row count")
    widths = {len(row) for row in matrix}
    if len(widths) > 1:
        raise DomainError("matrix is not rectangular")
    return widths.pop() if widths else 0


def _certificate(columns_dot, gram, atb, rhs, n_rows, width) -> tuple[Fraction, ...]:
    """Certificate of inconsistency as the exact least-squares residual.

    Solving the normal equations (A^T A) y = A^T b (always consistent)
    projects b onto the column space of A; the residual r = b - A.y is
    the canonical vector with r.A = 0 and r.b = |r|^2 > 0. It does not
    depend on elimination order, and it is nonzero exactly when the
    system has no solution.
    """
    normal = _Echelon(width)
    for j in range(width):
        try:
            normal.insert([Fraction(g) for g in gram[j]], atb[j])
        except _InconsistentRow:  # pragma: no cover - normal equations are consistent
            raise AssertionError("normal equations cannot be inconsistent")
    y = normal.solution().particular
    residual = [rhs[i] - columns_dot(i, y) for i in range(n_rows)]
    return normalize_primitive(residual)


def solve_affine(matrix: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> AffineOutcome:
    """Solve A.x = b exactly.

    Consistent systems yield an AffineSolution (particular point, nullspace
    basis, rank); inconsistent ones an AffineInconsistent whose certificate
    is the normalized least-squares residual.
    """
    width = _check_shape(matrix, b)
    rows = [[Fraction(v) for v in row] for row in matrix]
    rhs = [Fraction(v) for v in b]
    ech = _Echelon(width)
    solution = None
    for i, (row, r) in enumerate(zip(rows, rhs)):
        if solution is not None:
            if sum((c * x for c, x in zip(row, solution) if c), ZERO) != r:
                return _affine_certificate_outcome(rows, rhs, width)
            continue
        try:
            ech.insert(list(row), r)
        except _InconsistentRow:
            return _affine_certificate_outcome(rows, rhs, width)
        if ech.rank == width:
            solution = ech.solution().particular
    return ech.solution()


def _affine_certificate_outcome(rows, rhs, width) -> AffineInconsistent:
    gram = [[ZERO] * width for _ in range(width)]
    atb = [ZERO] * width
    for row, r in zip(rows, rhs):
        for j, v in enumerate(row):
            if v:
                atb[j] += v * r
                for k, w in enumerate(row):
                    if w:
                        gram[j][k] += v * w

    def dot(i, y):
        return sum((c * x for c, x in zip(rows[i], y) if c), ZERO)

    return AffineInconsistent(_certificate(dot, gram, atb, rhs, len(rows), width))


def _incidence_echelon(masks: Sequence[int], rhs: Sequence[Fraction], width: int):
    """Build the echelon basis of an incidence system and verify every row.

    Rows that introduce a not-yet-seen point are inserted first: full rank
    is then typically reached after about `width` insertions, and all the
    remaining rows can be checked by integer subset sums over a common
    denominator instead of rational elimination. Neither the reduced
    echelon form (unique per row space) nor the certificate (computed
    from the normal equations of the full system) depends on insertion
    order, so the reordering is unobservable. Returns the _Echelon, or
    None when the system is inconsistent.
    """
    seen = 0
    order: list[int] = []
    deferred: list[int] = []
    for i, mask in enumerate(masks):
        if mask & ~seen:
            seen |= mask
            order.append(i)
        else:
            deferred.append(i)
    order += deferred
    ech = _Echelon(width)
    inserted = 0
    for inserted, i in enumerate(order):
        if ech.rank == width:
            break
        vec = [ONE if (masks[i] >> j) & 1 else ZERO for j in range(width)]
        try:
            ech.insert(vec, rhs[i])
        except _InconsistentRow:
            return None
    else:
        inserted = len(order)
    if inserted < len(order):
        particular = ech.solution().particular
        den = math.lcm(*[v.denominator for v in particular])
        nums = [int(v * den) for v in particular]
        for i in order[inserted:]:
            m, total = masks[i], 0
            while m:
                low = m & -m
                total += nums[low.bit_length() - 1]
                m ^= low
            r = rhs[i]
            if total * r.denominator != r.numerator * den:
                return None
    return ech


def solve_incidence(masks: Sequence[int], values: Sequence[Fraction], width: int) -> AffineOutcome:
    """solve_affine specialized to a 0/1 incidence matrix given as bitmasks.

    Row i constrains sum(x[j] for j in mask i) = values[i]. Same outcome
    as expanding the masks and calling solve_affine, but much faster on
    families with many redundant rows.
    """
    if len(masks) != len(values):
        raise DomainError("masks and values disagree on row count")
    rhs = [Fraction(v) for v in values]
    ech = _incidence_echelon(masks, rhs, width)
    if ech is None:
        return _incidence_certificate_outcome(masks, rhs, width)
    return ech.solution()


def _incidence_certificate_outcome(masks, rhs, width) -> AffineInconsistent:
    gram = [[0] * width for _ in range(width)]
    atb = [ZERO] * width
    for mask, r in zip(masks, rhs):
        points = [j for j in range(width) if (mask >> j) & 1]
        for j in points:
            atb[j] += r
            for k in points:
                gram[j][k] += 1

    def dot(i, y):
        m, total = masks[i], ZERO
        while m:
            low = m & -m
            total += y[low.bit_length() - 1]
            m ^= low
        return total

    return AffineInconsistent(_certificate(dot, gram, atb, rhs, len(masks), width))


def reduce_incidence(masks: Sequence[int], values: Sequence[Fraction], width: int):
    """Row-reduce an incidence system to an equivalent independent system.

    Returns (reduced_rows, reduced_rhs) with at most `width` rows and the
    same solution set, or None when the equalities are inconsistent.
    """
    rhs = [Fraction(v) for v in values]
    ech = _incidence_echelon(masks, rhs, width)
    if ech is None:
        return None
    return [list(row) for row in ech.rows], list(ech.rhs)


def nonneg_feasible(matrix: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> NonnegOutcome:
    """Decide whether A.x = b admits x >= 0, by exact phase-1 simplex.

    Entering and leaving variables follow Bland's rule (lowest index),
    which rules out cycling; a generous iteration cap guards against
    implementation bugs by failing loudly instead of spinning.
    """
    width = _check_shape(matrix, b)
    m = len(matrix)
    if m == 0:
        return NonnegFeasible(())
    tableau: list[list[Fraction]] = []
    for row, r in zip(matrix, b):
        row = [Fraction(v) for v in row]
        r = Fraction(r)
        if r < 0:
            row = [-v for v in row]
            r = -r
        art = [ZERO] * m
        tableau.append(row + art + [r])
    for i in range(m):
        tableau[i][width + i] = ONE
    total_cols = width + m
    basis = list(range(width, total_cols))
    # objective: minimize the artificial total, expressed over nonbasic columns
    obj = [sum(tableau[i][j] for i in range(m)) for j in range(width)] + [ZERO] * m
    obj_value = sum(tableau[i][-1] for i in range(m))

    cap = math.comb(m + total_cols, m)
    iterations = 0
    while True:
        entering = next((j for j in range(width) if obj[j] > 0), None)
        if entering is None:
            break
        leaving_row = None
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving_row]):
                    best = ratio
                    leaving_row = i
        if leaving_row is None:  # pragma: no cover - phase-1 objective is bounded
            raise RuntimeError("phase-1 simplex objective unbounded")
        piv = tableau[leaving_row][entering]
        tableau[leaving_row] = [v / piv for v in tableau[leaving_row]]
        prow = tableau[leaving_row]
        for i in range(m):
            if i != leaving_row:
                c = tableau[i][entering]
                if c:
                    tableau[i] = [a - c * x for a, x in zip(tableau[i], prow)]
        c = obj[entering]
        obj = [a - c * x for a, x in zip(obj, prow[:-1])]
        obj_value -= c * prow[-1]
        basis[leaving_row] = entering
        iterations += 1
        if iterations > cap:
            raise RuntimeError(f"simplex exceeded its iteration cap ({cap})")
    if obj_value != 0:
        return NonnegInfeasible()
    witness = [ZERO] * width
    for i, var in enumerate(basis):
        if var < width:
            witness[var] = tableau[i][-1]
    return NonnegFeasible(tuple(witness))



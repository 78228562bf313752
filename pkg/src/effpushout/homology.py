"""
Integer homology of effective chain complexes.

Differentials become dense integer matrices; their Smith normal forms give
the free rank and torsion of every homology group. Python integers are
unbounded, so entry growth during elimination is harmless.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd

from effpushout.chains import ChainComplex, NotEffectiveError
from effpushout.reductions import HomotopyEquivalence

logger = logging.getLogger(__name__)


class SmithFormError(Exception):
    """Elimination finished without a divisibility chain."""
    pass


@dataclass
class IntMatrix:
    """Dense integer matrix, row-major."""
    rows: int
    cols: int
    entries: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.entries:
            self.entries = [[0] * self.cols for _ in range(self.rows)]
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"Entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> IntMatrix:
        width = len(rows[0]) if rows else 0
        return cls(len(rows), width, [list(r) for r in rows])

    def copy(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [list(r) for r in self.entries])


@dataclass(frozen=True)
class SmithForm:
    """Diagonal of the Smith normal form, zeros dropped."""
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_normal_form(matrix: IntMatrix) -> SmithForm:
    """
    Invariant factors d1 | d2 | ... of an integer matrix.

    Elimination pivots on the entry of least absolute value in the remaining
    block; a pivot that fails to divide the rest of the block pulls the
    offending row in and the step repeats. Transforms are not kept.
    """
    a = matrix.copy().entries
    rows, cols = matrix.rows, matrix.cols
    diagonal: list[int] = []

    for t in range(min(rows, cols)):
        pivot = _smallest_entry(a, t, rows, cols)
        if pivot is None:
            break
        _move_to(a, pivot, t)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        row_t, row_i = a[t], a[i]
                        for j in range(t, cols):
                            row_i[j] -= q * row_t[j]
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, rows):
                            a[i][j] -= q * a[i][t]
            leftover = _smallest_in_cross(a, t, rows, cols)
            if leftover is not None:
                _move_to(a, leftover, t)
                continue
            stray = _first_not_divisible(a, t, rows, cols)
            if stray is None:
                break
            for j in range(t, cols):
                a[t][j] += a[stray][j]
        diagonal.append(abs(a[t][t]))

    form = SmithForm(tuple(diagonal))
    for left, right in zip(form.diagonal, form.diagonal[1:]):
        if right % left:
            raise SmithFormError(f"Divisibility chain broken: {left} does not divide {right}")
    return form


def _smallest_entry(
    a: list[list[int]], t: int, rows: int, cols: int
) -> tuple[int, int] | None:
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
                if v == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


def _smallest_in_cross(
    a: list[list[int]], t: int, rows: int, cols: int
) -> tuple[int, int] | None:
    """Nonzero entries left in column t or row t below/right of the pivot."""
    best = None
    for i in range(t + 1, rows):
        v = abs(a[i][t])
        if v and (best is None or v < best[0]):
            best = (v, i, t)
    for j in range(t + 1, cols):
        v = abs(a[t][j])
        if v and (best is None or v < best[0]):
            best = (v, t, j)
    return None if best is None else (best[1], best[2])


def _first_not_divisible(a: list[list[int]], t: int, rows: int, cols: int) -> int | None:
    p = a[t][t]
    for i in range(t + 1, rows):
        for j in range(t + 1, cols):
            if a[i][j] % p:
                return i
    return None


def _move_to(a: list[list[int]], position: tuple[int, int], t: int) -> None:
    i, j = position
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^r ⊕ Z/d1 ⊕ ... with d1 | d2 | ..., each di >= 2."""
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("Free rank must be nonnegative")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"Torsion coefficients must be >= 2: {self.torsion}")
        for left, right in zip(self.torsion, self.torsion[1:]):
            if right % left:
                raise ValueError(f"Torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_invariants(cls, free_rank: int, factors: list[int]) -> AbelianGroup:
        """Normalize arbitrary cyclic orders into invariant factors."""
        torsion: list[int] = []
        for d in factors:
            d = abs(d)
            if d == 0:
                free_rank += 1
            elif d > 1:
                torsion.append(d)
        torsion = _invariant_factors(torsion)
        return cls(free_rank, tuple(torsion))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def components(self) -> list[str]:
        """One entry per cyclic summand: all `Z` first, then `Z/dZ`."""
        return ["Z"] * self.free_rank + [f"Z/{d}Z" for d in self.torsion]

    def __str__(self) -> str:
        parts = self.components()
        return " + ".join(parts) if parts else "0"


def _invariant_factors(orders: list[int]) -> list[int]:
    """Replace pairs (a, b) by (gcd, lcm) until the list is a divisibility chain."""
    values = sorted(orders)
    changed = True
    while changed:
        changed = False
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                a, b = values[i], values[j]
                if b % a:
                    g = gcd(a, b)
                    values[i], values[j] = g, a * b // g
                    changed = True
        values = sorted(v for v in values if v != 1)
    return values


def differential_matrix(complex_: ChainComplex, degree: int) -> IntMatrix:
    """Matrix of d: C_degree -> C_{degree-1}; columns follow basis(degree)."""
    source = complex_.basis(degree)
    target = complex_.basis(degree - 1)
    index = {g: i for i, g in enumerate(target)}
    matrix = IntMatrix(len(target), len(source))
    for j, generator in enumerate(source):
        for coefficient, term in complex_.d(generator):
            matrix.entries[index[term]][j] = coefficient
    return matrix


def homology_effective(complex_: ChainComplex, degree: int) -> AbelianGroup:
    """H_n = ker d_n / im d_{n+1}; trivial outside the support window."""
    if not complex_.effective:
        raise NotEffectiveError(f"{complex_.name} is not effective")
    if degree < complex_.lo or degree > complex_.hi:
        return AbelianGroup()
    rank_out = smith_normal_form(differential_matrix(complex_, degree)).rank
    incoming = smith_normal_form(differential_matrix(complex_, degree + 1))
    free = complex_.rank(degree) - rank_out - incoming.rank
    torsion = tuple(d for d in incoming.diagonal if d > 1)
    logger.debug("H_%d(%s): rank %d, torsion %s", degree, complex_.name, free, torsion)
    return AbelianGroup(free, torsion)


def homology_via_equivalence(equivalence: HomotopyEquivalence, degree: int) -> AbelianGroup:
    """Homology of the left complex, read off the effective right complex."""
    right = equivalence.right
    if not right.effective:
        raise NotEffectiveError(f"{right.name} is not effective")
    return homology_effective(right, degree)


def homology_range(
    complex_: ChainComplex, degrees: range
) -> dict[int, AbelianGroup]:
    return {n: homology_effective(complex_, n) for n in degrees}

"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`. Determinants and ranks use
fraction-free (Bareiss) elimination on an integer-scaled copy of the matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

MAX_DIM = 64

Rational = Fraction


class LinearAlgebraError(ValueError):
    pass


def to_rational(value) -> Fraction:
    """Convert ints, Fractions, or strings like ``"3/4"``, ``"-2"``, ``"0.125"``.

    Floats are rejected; their binary expansion is almost never what the
    caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.entries)
        if rows:
            width = len(rows[0])
            for i, row in enumerate(rows):
                if len(row) != width:
                    raise LinearAlgebraError(
                        f"row {i + 1} has {len(row)} entries, expected {width}"
                    )
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> RationalMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(tuple(zip(*self.entries))) if self.entries else self

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> RationalMatrix:
        """Submatrix with the given 0-based row and column indices, in that order."""
        return RationalMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def _integer_rows(m: RationalMatrix) -> tuple[list[list[int]], int]:
    """Scale each row by its denominator lcm; return int rows and the total scale."""
    out = []
    scale = 1
    for row in m.entries:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append([int(x * lcm) for x in row])
        scale *= lcm
    return out, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int, int]:
    """In-place Bareiss elimination with row pivoting.

    Returns (rank, last pivot, row-swap sign). For a square nonsingular input
    the last pivot times the sign is the determinant.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[r], a[pivot] = a[pivot], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r, prev, sign


def det(m: RationalMatrix) -> Fraction:
    if not m.is_square:
        raise LinearAlgebraError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    r, last, sign = _bareiss(a)
    if r < m.rows:
        return Fraction(0)
    return Fraction(sign * last, scale)


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    return _bareiss(a)[0]


def independent_rows(m: RationalMatrix) -> list[int]:
    """Lexicographically first maximal set of linearly independent rows (0-based)."""
    chosen: list[int] = []
    for i in range(m.rows):
        if rank(m.select(chosen + [i], range(m.cols))) == len(chosen) + 1:
            chosen.append(i)
    return chosen


def independent_columns(m: RationalMatrix) -> list[int]:
    return independent_rows(m.transpose())


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (0-based)."""
    a = m.to_lists()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


@dataclass(frozen=True)
class ReducedSystem:
    """Dependent unknowns expressed through free ones.

    For every ``i``: ``u[pivot_cols[i]] = -sum_j d[i, j] * u[free_cols[j]]``.
    ``rows`` are the independent equations that were kept. All indices are
    0-based positions in the input matrix.
    """

    d: RationalMatrix
    rows: tuple[int, ...]
    pivot_cols: tuple[int, ...]
    free_cols: tuple[int, ...]

    def dependent_values(self, free_values: Sequence[Fraction]) -> list[Fraction]:
        return [
            -sum((self.d[i, j] * free_values[j] for j in range(len(self.free_cols))), Fraction(0))
            for i in range(len(self.pivot_cols))
        ]


def reduced_coefficients(s: RationalMatrix, r: int) -> ReducedSystem:
    """Solve the homogeneous system ``s u = 0`` for ``r`` dependent unknowns.

    Rows are chosen as the lexicographically first independent set and the
    dependent unknowns are the reduced-row-echelon pivots, so the caller never
    has to pre-sort the matrix.
    """
    actual = rank(s)
    if actual != r:
        raise LinearAlgebraError(f"rank mismatch: matrix has rank {actual}, expected {r}")
    rows = independent_rows(s)
    sub = s.select(rows, range(s.cols))
    red, pivots = rref(sub)
    if len(pivots) != r:
        raise LinearAlgebraError("could not select a nonsingular pivot block")
    free = [c for c in range(s.cols) if c not in pivots]
    d = RationalMatrix(tuple(tuple(red[i][f] for f in free) for i in range(r)))
    return ReducedSystem(d, tuple(rows), tuple(pivots), tuple(free))


def cramer_minor(block: RationalMatrix, replace: int, column: Sequence[Fraction]) -> RationalMatrix:
    """Copy of a square ``block`` with column ``replace`` swapped for ``column``."""
    rows = []
    for i, row in enumerate(block.entries):
        new = list(row)
        new[replace] = column[i]
        rows.append(tuple(new))
    return RationalMatrix(tuple(rows))


@dataclass(frozen=True)
class SqrtRational:
    """The real number ``coefficient * sqrt(radicand)``."""

    coefficient: Fraction
    radicand: Fraction

    def __post_init__(self):
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")

    def squared(self) -> Fraction:
        return self.coefficient * self.coefficient * self.radicand

    def __float__(self) -> float:
        return float(self.coefficient) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1 or self.coefficient == 0:
            return format_rational(self.coefficient)
        return f"{format_rational(self.coefficient)}*sqrt({format_rational(self.radicand)})"


def _square_part(m: int) -> tuple[int, int]:
    """Split ``m > 0`` as ``s*s*f`` with ``f`` squarefree; return (s, f)."""
    s, f = 1, 1
    rest = m
    p = 2
    while p * p * p <= m:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        f *= p ** (e % 2)
        p += 1 if p == 2 else 2
    # every prime factor left exceeds cbrt(m): rest is 1, q, q*q or q*r
    root = math.isqrt(rest)
    if root * root == rest:
        s *= root
    else:
        f *= rest
    return s, f


def sqrt_normalize(v) -> SqrtRational:
    v = to_rational(v)
    if v < 0:
        raise ValueError(f"square root of negative rational {v}")
    if v == 0:
        return SqrtRational(Fraction(0), Fraction(1))
    # sqrt(p/q) = sqrt(p*q)/q
    s, f = _square_part(v.numerator * v.denominator)
    return SqrtRational(Fraction(s, v.denominator), Fraction(f))

"""Brute-force checkers that share no code with the analytic modules.

``nilpotent_oracle`` decides cone feasibility of the squared system by
enumerating minimal supports; ``idempotent_search_n2`` finds real roots of
the eliminated quartic with a companion-matrix solver.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .algebra import PermEvolutionAlgebra

MAX_NILPOTENT_DIM = 12
RESIDUAL_TOL = 1e-9
MERGE_TOL = 1e-7


class SearchMethod(str, enum.Enum):
    EXACT_ELIMINATION = "exact_elimination"
    CONE_ANALYSIS = "cone_analysis"
    GRID_SAMPLE = "grid_sample"
    NUMERIC_ROOTS = "numeric_roots"


@dataclass(frozen=True)
class SearchReport:
    instance: str
    witnesses: tuple[tuple, ...]
    exhausted: bool
    method: SearchMethod
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def nontrivial(self) -> bool:
        return any(any(v != 0 for v in w) for w in self.witnesses)


def _squared_system(A: PermEvolutionAlgebra) -> list[list[Fraction]]:
    n = A.n
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        s[A.pi.images[i - 1] - 1][i - 1] += A.a_pi[i - 1]
        s[A.tau.images[i - 1] - 1][i - 1] += A.a_tau[i - 1]
    return s


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def nonnegative_kernel_witness(s: Sequence[Sequence[Fraction]], ncols: int) -> tuple[Fraction, ...] | None:
    """A nonzero ``u >= 0`` with ``s u = 0``, or None.

    Such a ``u`` exists iff some support set ``T`` has a one-dimensional
    kernel in the columns ``T`` spanned by a strictly positive vector (a
    minimal-support solution). Every ``T`` is tried, smallest first.
    """
    for size in range(1, ncols + 1):
        for support in combinations(range(ncols), size):
            cols = [[Fraction(row[c]) for c in support] for row in s]
            kernel = _nullspace(cols, size)
            if len(kernel) != 1:
                continue
            v = kernel[0]
            if all(x < 0 for x in v):
                v = [-x for x in v]
            if all(x > 0 for x in v):
                u = [Fraction(0)] * ncols
                for c, x in zip(support, v):
                    u[c] = x
                return tuple(u)
    return None


def nilpotent_oracle(A: PermEvolutionAlgebra) -> SearchReport:
    """Exact decision: does x^2 = 0 have a nonzero real solution?

    Works in the squares ``u_i = x_i^2``; witnesses are u-vectors.
    """
    n = A.n
    if n > MAX_NILPOTENT_DIM:
        raise ValueError(f"nilpotent oracle is capped at n <= {MAX_NILPOTENT_DIM}")
    desc = f"pi={list(A.pi.images)} tau={list(A.tau.images)}"
    u = nonnegative_kernel_witness(_squared_system(A), n)
    witness = u if u is not None else (Fraction(0),) * n
    return SearchReport(desc, (witness,), True, SearchMethod.EXACT_ELIMINATION, {"space": "squares"})


def squared_residual(A: PermEvolutionAlgebra, u: Sequence[Fraction]) -> Fraction:
    s = _squared_system(A)
    return max(abs(sum((s[i][j] * u[j] for j in range(A.n)), Fraction(0))) for i in range(A.n))


def _evolve(A: PermEvolutionAlgebra, x: Sequence, exact: bool) -> list:
    conv = Fraction if exact else float
    out = [conv(0)] * A.n
    for i in range(A.n):
        w = x[i] * x[i]
        out[A.pi.images[i] - 1] += conv(A.a_pi[i]) * w
        out[A.tau.images[i] - 1] += conv(A.a_tau[i]) * w
    return out


def substitution_residual(A: PermEvolutionAlgebra, x: Sequence, kind: str = "idempotent"):
    """Max-norm residual of x^2 = 0 (``kind="nilpotent"``) or x^2 = x.

    Exact (a Fraction) when every coordinate is rational.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    xs = [Fraction(v) if exact else float(v) for v in x]
    sq = _evolve(A, xs, exact)
    if kind == "nilpotent":
        return max(abs(v) for v in sq)
    if kind == "idempotent":
        return max(abs(v - w) for v, w in zip(sq, xs))
    raise ValueError(f"unknown kind {kind!r}")


def _quartic(a, b, c, d) -> list[float]:
    k = b * d - a * c
    return [float(k * k), float(-2 * b * k), float(b * b + c * d), float(-c), 0.0]


def _newton(coeffs: list[float], x: float, steps: int = 4) -> float:
    deriv = np.polyder(coeffs)
    for _ in range(steps):
        f = np.polyval(coeffs, x)
        df = np.polyval(deriv, x)
        if df == 0:
            break
        x = x - f / df
    return float(x)


def idempotent_search_n2(a, b, c, d) -> SearchReport:
    """All real solutions of ``a x^2 + b y^2 = y``, ``d x^2 + c y^2 = x`` numerically."""
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    if 0 in (a, b, c, d):
        raise ValueError("coefficients must be nonzero")
    coeffs = _quartic(a, b, c, d)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    roots = np.roots(coeffs)
    af, bf, cf, df = float(a), float(b), float(c), float(d)
    k = float(b * d - a * c)
    points: list[tuple[float, float]] = []
    for z in roots:
        if abs(z.imag) > 1e-6 * (1 + abs(z)):
            continue
        x = _newton(coeffs, float(z.real)) if z.real != 0 else 0.0
        y = (bf * x - k * x * x) / cf
        res = max(abs(af * x * x + bf * y * y - y), abs(df * x * x + cf * y * y - x))
        if res > RESIDUAL_TOL:
            continue
        if any(abs(x - px) <= MERGE_TOL and abs(y - py) <= MERGE_TOL for px, py in points):
            continue
        points.append((x, y))
    points.sort()
    return SearchReport(f"a={a} b={b} c={c} d={d}", tuple(points), False, SearchMethod.NUMERIC_ROOTS)


def hausdorff(p: Sequence[Sequence[float]], q: Sequence[Sequence[float]]) -> float:
    if not p and not q:
        return 0.0
    if not p or not q:
        return float("inf")

    def dist(u, v):
        return max(abs(float(s) - float(t)) for s, t in zip(u, v))

    return max(
        max(min(dist(u, v) for v in q) for u in p),
        max(min(dist(u, v) for u in p) for v in q),
    )

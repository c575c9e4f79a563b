"""Idempotent elements (x^2 = x).

For general ``n`` only the zero element and the uniform point ``(1/d, ..., 1/d)``
are produced. For ``n = 2`` with ``pi = (1 2)``, ``tau = id`` the set is
complete: eliminating ``y`` from::

    a x^2 + b y^2 = y
    d x^2 + c y^2 = x

gives ``x * cubic(x) = 0`` with
``cubic(x) = K^2 x^3 - 2 b K x^2 + (b^2 + c d) x - c`` and ``K = b d - a c``.
Root counts are decided exactly from the rational discriminant; only the
root values themselves may be floating point.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebra import PermEvolutionAlgebra, element, square
from .perm import Permutation

TOLERANCE = 1e-9

Number = Union[Fraction, float]


class IdempotentError(ValueError):
    pass


class CubicCase(str, enum.Enum):
    DEG_LINEAR = "deg_linear"
    THREE_REAL = "three_real"
    ONE_REAL = "one_real"
    TWO_REAL = "two_real"
    ONE_REAL_TRIPLE = "one_real_triple"


@dataclass(frozen=True)
class Equation:
    """``sum(coef * x_var^2 for var, coef in terms) == x_target``."""

    k: int
    target: int
    terms: tuple[tuple[int, Fraction], ...]

    def residual(self, x: Sequence[Number]) -> Number:
        return sum(c * x[v - 1] ** 2 for v, c in self.terms) - x[self.target - 1]


@dataclass(frozen=True)
class CubicClassification:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    case: CubicCase
    p: Fraction | None = None
    q: Fraction | None = None
    delta: Fraction | None = None
    # K == 0 and b^2 + c d == 0: the cubic collapses to the constant -c
    outside_classification: bool = False

    @property
    def degenerate(self) -> bool:
        return self.case is CubicCase.DEG_LINEAR

    @property
    def k(self) -> Fraction:
        return self.b * self.d - self.a * self.c

    @property
    def expected_real_roots(self) -> int:
        """Distinct real roots of the cubic factor."""
        return {
            CubicCase.DEG_LINEAR: 0 if self.outside_classification else 1,
            CubicCase.THREE_REAL: 3,
            CubicCase.ONE_REAL: 1,
            CubicCase.TWO_REAL: 2,
            CubicCase.ONE_REAL_TRIPLE: 1,
        }[self.case]

    def cubic_coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        k = self.k
        return (k * k, -2 * self.b * k, self.b ** 2 + self.c * self.d, -self.c)


@dataclass(frozen=True)
class IdempotentPoint:
    coords: tuple[Number, ...]
    exact: bool
    residual: float
    multiplicity: int = 1


@dataclass(frozen=True)
class IdempotentSet:
    points: tuple[IdempotentPoint, ...]
    complete: bool
    classification: CubicClassification | None = None
    found: tuple[str, ...] = ()

    @property
    def includes_zero(self) -> bool:
        return any(p.exact and all(c == 0 for c in p.coords) for p in self.points)


def idempotent_system(A: PermEvolutionAlgebra) -> list[Equation]:
    j = A.j_map()
    out = []
    for k in range(1, A.n + 1):
        jk = j(k)
        if jk == k:
            terms = ((k, A.a_pi[k - 1] + A.a_tau[k - 1]),)
        else:
            terms = ((k, A.a_pi[k - 1]), (jk, A.a_tau[jk - 1]))
        out.append(Equation(k, A.pi(k), terms))
    return out


def idempotent_residual(A: PermEvolutionAlgebra, x: Sequence[Number]) -> Number:
    """Max-norm of x^2 - x; exact for rational input."""
    if all(isinstance(v, (int, Fraction)) for v in x):
        sq = square(A, x)
        return max(abs(s - Fraction(v)) for s, v in zip(sq, x))
    return max(abs(eq.residual(x)) for eq in idempotent_system(A))


def verify_idempotent(A: PermEvolutionAlgebra, x: Sequence[Number], tol: float = TOLERANCE) -> bool:
    res = idempotent_residual(A, x)
    if isinstance(res, Fraction):
        return res == 0
    return res <= tol


def uniform_constant(A: PermEvolutionAlgebra) -> Fraction | None:
    """The common value of a_{k pi(k)} + a_{j_k pi(k)} over all k, if there is one."""
    j = A.j_map()
    values = {A.a_pi[k - 1] + A.a_tau[j(k) - 1] for k in range(1, A.n + 1)}
    if len(values) == 1:
        return values.pop()
    return None


def particular_idempotents(A: PermEvolutionAlgebra) -> IdempotentSet:
    zero = tuple(Fraction(0) for _ in range(A.n))
    points = [IdempotentPoint(zero, True, 0.0)]
    found = ["zero"]
    d = uniform_constant(A)
    if d:
        points.append(IdempotentPoint((1 / d,) * A.n, True, 0.0))
        found.append("uniform")
    return IdempotentSet(tuple(points), complete=False, found=tuple(found))


def classify_cubic(a, b, c, d) -> CubicClassification:
    a, b, c, d = element((a, b, c, d))
    if 0 in (a, b, c, d):
        raise IdempotentError("classification needs all four coefficients nonzero")
    k = b * d - a * c
    if k == 0:
        return CubicClassification(a, b, c, d, CubicCase.DEG_LINEAR, outside_classification=(b * b + c * d == 0))
    p = (3 * c * d - b * b) / (3 * k * k)
    q = 2 * (9 * b * c * d + b ** 3) / (27 * k ** 3) - c / (k * k)
    delta = (q / 2) ** 2 + (p / 3) ** 3
    if delta < 0:
        case = CubicCase.THREE_REAL
    elif delta > 0:
        case = CubicCase.ONE_REAL
    elif p == 0:
        case = CubicCase.ONE_REAL_TRIPLE
    else:
        case = CubicCase.TWO_REAL
    return CubicClassification(a, b, c, d, case, p, q, delta)


def _cbrt(v: float) -> float:
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def _polish(coeffs: Sequence[Fraction], x: float, steps: int = 3) -> float:
    c3, c2, c1, c0 = (float(v) for v in coeffs)
    for _ in range(steps):
        f = ((c3 * x + c2) * x + c1) * x + c0
        df = (3 * c3 * x + 2 * c2) * x + c1
        if df == 0 or f == 0:
            break
        x_new = x - f / df
        if abs(x_new - x) <= 1e-16 * max(1.0, abs(x)):
            x = x_new
            break
        x = x_new
    return x


def _exact_if_rational(coeffs: Sequence[Fraction], x: float) -> Number:
    """Return ``x`` as a Fraction when a nearby small-denominator rational is an exact root."""
    if not math.isfinite(x):
        return x
    guess = Fraction(x).limit_denominator(10 ** 6)
    c3, c2, c1, c0 = coeffs
    if ((c3 * guess + c2) * guess + c1) * guess + c0 == 0:
        return guess
    return x


def cubic_roots(cls: CubicClassification) -> list[tuple[Number, int]]:
    """Real roots of the cubic factor with multiplicities, ascending."""
    b, c, d = cls.b, cls.c, cls.d
    if cls.case is CubicCase.DEG_LINEAR:
        lin = b * b + c * d
        return [] if lin == 0 else [(c / lin, 1)]
    k = cls.k
    shift = 2 * b / (3 * k)  # x = t + shift removes the quadratic term
    p, q = cls.p, cls.q
    coeffs = cls.cubic_coefficients()
    if cls.case is CubicCase.ONE_REAL_TRIPLE:
        return [(shift, 3)]
    if cls.case is CubicCase.TWO_REAL:
        simple = 3 * q / p + shift
        double = -3 * q / (2 * p) + shift
        return sorted([(simple, 1), (double, 2)], key=lambda r: r[0])
    pf, qf, sf = float(p), float(q), float(shift)
    if cls.case is CubicCase.ONE_REAL:
        root_delta = math.sqrt(float(cls.delta))
        t = _cbrt(-qf / 2 + root_delta) + _cbrt(-qf / 2 - root_delta)
        xs = [t + sf]
    else:
        m = 2 * math.sqrt(-pf / 3)
        arg = 3 * qf / (pf * m)
        theta = math.acos(max(-1.0, min(1.0, arg))) / 3
        xs = [m * math.cos(theta - 2 * math.pi * i / 3) + sf for i in range(3)]
    out = [(_exact_if_rational(coeffs, _polish(coeffs, x)), 1) for x in xs]
    return sorted(out, key=lambda r: float(r[0]))


def _is_section3_shape(A: PermEvolutionAlgebra) -> str | None:
    swap, ident = Permutation((2, 1)), Permutation((1, 2))
    if A.n != 2:
        return None
    if A.pi == swap and A.tau == ident:
        return "pi_swap"
    if A.pi == ident and A.tau == swap:
        return "tau_swap"
    return None


def section3_coefficients(A: PermEvolutionAlgebra) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(a, b, c, d) = (a_12, a_22, a_21, a_11) for the two-dimensional algebra."""
    shape = _is_section3_shape(A)
    if shape is None:
        raise IdempotentError("complete solution needs n == 2 with one transposition and one identity")
    swapped, ident = (A.a_pi, A.a_tau) if shape == "pi_swap" else (A.a_tau, A.a_pi)
    return swapped[0], ident[1], swapped[1], ident[0]


def recover_y(a: Fraction, b: Fraction, c: Fraction, d: Fraction, x: Number) -> Number:
    k = b * d - a * c
    return (b * x - k * x * x) / c


def solve_n2(A: PermEvolutionAlgebra) -> IdempotentSet:
    """Every real idempotent of a two-dimensional algebra."""
    a, b, c, d = section3_coefficients(A)
    cls = classify_cubic(a, b, c, d)
    points = [IdempotentPoint((Fraction(0), Fraction(0)), True, 0.0)]
    for x, mult in cubic_roots(cls):
        if x == 0:
            continue
        y = recover_y(a, b, c, d, x)
        coords = (x, y)
        exact = isinstance(x, Fraction)
        res = idempotent_residual(A, coords)
        if exact and res != 0:
            raise IdempotentError(f"exact root {x} failed substitution")
        if not exact and res > TOLERANCE:
            raise IdempotentError(f"root {x} has residual {res} above tolerance")
        points.append(IdempotentPoint(coords, exact, float(res), mult))
    found = ["zero", "cubic:" + cls.case.value]
    if cls.outside_classification:
        found.append("outside_classification")
    return IdempotentSet(tuple(points), complete=True, classification=cls, found=tuple(found))


def idempotents(A: PermEvolutionAlgebra) -> IdempotentSet:
    """Complete set when the two-dimensional solver applies, else particular solutions."""
    if _is_section3_shape(A) and all(v != 0 for v in A.a_pi + A.a_tau):
        return solve_n2(A)
    return particular_idempotents(A)

"""Absolute nilpotent elements (x^2 = 0).

Writing ``u_i = x_i^2`` turns x^2 = 0 into a homogeneous linear system in
nonnegative unknowns. Along each cycle ``(l_1 .. l_p)`` of the map
``k -> tau^{-1}(pi(k))`` the equations only couple neighbours::

    a_pi[l_k] * u[l_k] + a_tau[l_{k+1}] * u[l_{k+1}] = 0     (indices mod p)

so every cycle is solved on its own. Solutions are reported as rays of
squared magnitudes; signs of the coordinates are free.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import PermEvolutionAlgebra, equation_matrix, square, system_matrix
from .exactnum import (
    RationalMatrix,
    SqrtRational,
    cramer_minor,
    det,
    independent_columns,
    independent_rows,
    rank,
    reduced_coefficients,
    sqrt_normalize,
)
from .perm import cycles

logger = logging.getLogger(__name__)

ONE = Fraction(1)


class CycleKind(str, enum.Enum):
    TRIVIAL_ONLY = "trivial_only"
    FREE_COORDINATE = "free_coordinate"
    ONE_PARAM_FAMILY = "one_param_family"
    # a proper sub-chain of the cycle carries a ray; see ``_solve_cycle``
    CHAIN_FAMILY = "chain_family"


@dataclass(frozen=True)
class CycleEquation:
    """``coef_left * u[left] + coef_right * u[right] = 0``, the equation for ``target``."""

    k: int
    target: int
    left: int
    coef_left: Fraction
    right: int
    coef_right: Fraction


@dataclass(frozen=True)
class Ray:
    """``|x_{indices[k]}| = ratios[k] * t`` for ``t >= 0``; other coordinates zero."""

    indices: tuple[int, ...]
    ratios: tuple[SqrtRational, ...]

    @property
    def squared_ratios(self) -> tuple[Fraction, ...]:
        return tuple(r.squared() for r in self.ratios)


@dataclass(frozen=True)
class CycleSolution:
    cycle: tuple[int, ...]
    kind: CycleKind
    rays: tuple[Ray, ...] = ()

    @property
    def sign_freedom(self) -> bool:
        return bool(self.rays)

    @property
    def free_indices(self) -> tuple[int, ...]:
        if self.kind is CycleKind.FREE_COORDINATE:
            return tuple(r.indices[0] for r in self.rays)
        return ()

    @property
    def ratios(self) -> tuple[SqrtRational, ...]:
        if self.kind is CycleKind.ONE_PARAM_FAMILY:
            return self.rays[0].ratios
        return ()


class Verdict(str, enum.Enum):
    CERTIFIED = "certified"
    NOT_CERTIFIED = "not_certified"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class CriterionResult:
    name: str
    verdict: Verdict
    reason: str
    detail: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.verdict is Verdict.CERTIFIED


@dataclass(frozen=True)
class NilpotentReport:
    per_cycle: tuple[CycleSolution, ...]
    criteria: tuple[CriterionResult, ...] = ()

    @property
    def unique(self) -> bool:
        return all(c.kind is CycleKind.TRIVIAL_ONLY for c in self.per_cycle)

    @property
    def criteria_fired(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.criteria if c)

    @property
    def rays(self) -> tuple[Ray, ...]:
        return tuple(r for c in self.per_cycle for r in c.rays)

    def witness_squares(self, n: int, t2: Fraction = ONE) -> tuple[Fraction, ...]:
        """Squared coordinates of a nilpotent with every ray at parameter ``t^2 = t2``."""
        u = [Fraction(0)] * n
        for ray in self.rays:
            for i, r2 in zip(ray.indices, ray.squared_ratios):
                u[i - 1] = r2 * t2
        return tuple(u)


def squared_system(A: PermEvolutionAlgebra) -> list[list[CycleEquation]]:
    """The equations of x^2 = 0 in the unknowns ``u = x^2``, grouped by j-map cycle."""
    out = []
    for cyc in cycles(A.j_map()):
        p = len(cyc)
        eqs = []
        for k in range(p):
            lk, lnext = cyc[k], cyc[(k + 1) % p]
            eqs.append(
                CycleEquation(
                    k=lk,
                    target=A.pi(lk),
                    left=lk,
                    coef_left=A.a_pi[lk - 1],
                    right=lnext,
                    coef_right=A.a_tau[lnext - 1],
                )
            )
        out.append(eqs)
    return out


def _ray(indices: Sequence[int], squares: Sequence[Fraction]) -> Ray:
    return Ray(tuple(indices), tuple(sqrt_normalize(s) for s in squares))


def _solve_cycle(cyc: tuple[int, ...], alpha: list[Fraction], beta: list[Fraction]) -> CycleSolution:
    p = len(cyc)
    if p == 1:
        if alpha[0] + beta[0] != 0:
            return CycleSolution(cyc, CycleKind.TRIVIAL_ONLY)
        kind = CycleKind.FREE_COORDINATE if alpha[0] == 0 else CycleKind.ONE_PARAM_FAMILY
        return CycleSolution(cyc, kind, (_ray(cyc, [ONE]),))

    # edge k joins positions k and k+1 through alpha[k] u_k + beta[k+1] u_{k+1} = 0
    killed = [False] * p
    step: list[Fraction | None] = [None] * p
    for k in range(p):
        a, b = alpha[k], beta[(k + 1) % p]
        if a and b:
            if a * b > 0:
                killed[k] = killed[(k + 1) % p] = True
            else:
                step[k] = -a / b
        elif a:
            killed[k] = True
        elif b:
            killed[(k + 1) % p] = True

    if all(s is not None for s in step):
        closure = ONE
        for s in step:
            closure *= s
        if closure != 1:
            return CycleSolution(cyc, CycleKind.TRIVIAL_ONLY)
        squares = [ONE]
        for k in range(p - 1):
            squares.append(squares[-1] * step[k])
        return CycleSolution(cyc, CycleKind.ONE_PARAM_FAMILY, (_ray(cyc, squares),))

    # break the cycle after a non-link edge and walk maximal linked segments
    start = next(k for k in range(p) if step[k] is None) + 1
    rays = []
    segment: list[int] = []
    squares: list[Fraction] = []
    for offset in range(p):
        pos = (start + offset) % p
        if not segment:
            squares = [ONE]
        else:
            squares.append(squares[-1] * step[(pos - 1) % p])
        segment.append(pos)
        if step[pos] is None:
            if not any(killed[q] for q in segment):
                rays.append(_ray([cyc[q] for q in segment], squares))
            segment = []
    rays.sort(key=lambda r: min(r.indices))

    if not rays:
        kind = CycleKind.TRIVIAL_ONLY
    elif all(len(r.indices) == 1 for r in rays):
        kind = CycleKind.FREE_COORDINATE
    else:
        kind = CycleKind.CHAIN_FAMILY
    return CycleSolution(cyc, kind, tuple(rays))


def solve_cycles(A: PermEvolutionAlgebra) -> tuple[CycleSolution, ...]:
    out = []
    for cyc in cycles(A.j_map()):
        alpha = [A.a_pi[i - 1] for i in cyc]
        beta = [A.a_tau[i - 1] for i in cyc]
        out.append(_solve_cycle(cyc, alpha, beta))
    return tuple(out)


def solve(A: PermEvolutionAlgebra, criteria: bool = True) -> NilpotentReport:
    """Describe every absolute nilpotent of ``A``.

    With ``criteria=True`` the four closed-form uniqueness tests are also
    evaluated and attached to the report.
    """
    per_cycle = solve_cycles(A)
    crit: tuple[CriterionResult, ...] = ()
    if criteria:
        crit = all_criteria(A)
    return NilpotentReport(per_cycle, crit)


# -- uniqueness criteria ----------------------------------------------------

def uniqueness_by_det(A: PermEvolutionAlgebra) -> CriterionResult:
    d = det(equation_matrix(A))
    if d != 0:
        return CriterionResult("det", Verdict.CERTIFIED, "det != 0", {"det": d})
    return CriterionResult("det", Verdict.NOT_CERTIFIED, "det == 0", {"det": d})


def uniqueness_rank_n1(A: PermEvolutionAlgebra) -> CriterionResult:
    """Singular with corank one: look for a Cramer minor of the right sign.

    The nonsingular block is the lexicographically first choice of rows and
    columns of the equation matrix; the remaining column plays the role of
    the last unknown.
    """
    m = equation_matrix(A)
    n = A.n
    d = det(m)
    r = rank(m)
    if d != 0 or r != n - 1:
        return CriterionResult(
            "rank_n1", Verdict.INAPPLICABLE, f"needs det == 0 and rank {n - 1}", {"rank": r}
        )
    rows = independent_rows(m)
    sub = m.select(rows, range(n))
    cols = independent_columns(sub)
    free = next(c for c in range(n) if c not in cols)
    block = sub.select(range(n - 1), cols)
    det_block = det(block)
    free_col = sub.column(free)
    products = []
    fired = None
    for t, c in enumerate(cols):
        det_minor = det(cramer_minor(block, t, free_col))
        products.append((c + 1, det_minor, det_minor * det_block))
        if fired is None and det_minor * det_block > 0:
            fired = (c + 1, det_minor, det_minor * det_block)
    detail = {
        "rows": [i + 1 for i in rows],
        "cols": [c + 1 for c in cols],
        "free": free + 1,
        "det_block": det_block,
        "products": products,
    }
    if fired is not None:
        detail.update(i0=fired[0], det_minor=fired[1], product=fired[2])
        return CriterionResult("rank_n1", Verdict.CERTIFIED, f"product {fired[2]} > 0 at i0={fired[0]}", detail)
    return CriterionResult("rank_n1", Verdict.NOT_CERTIFIED, "no positive minor product", detail)


def uniqueness_sign(A: PermEvolutionAlgebra) -> CriterionResult:
    j = A.j_map()
    products = []
    for k in range(1, A.n + 1):
        products.append(A.a_pi[k - 1] * A.a_tau[j(k) - 1])
    if all(p > 0 for p in products):
        return CriterionResult("sign", Verdict.CERTIFIED, "all products positive", {"products": products})
    k_bad = next(k for k, p in enumerate(products, start=1) if p <= 0)
    return CriterionResult("sign", Verdict.NOT_CERTIFIED, f"product at k={k_bad} is not positive", {"products": products})


def cone_oracle(D: RationalMatrix) -> bool:
    """Is there ``(u, v) >= 0``, not both zero, with ``d_i1 u + d_i2 v <= 0`` for every row?

    The feasible set is a cone in the quadrant, so it is nontrivial iff one of
    its extreme rays is feasible: an axis or a boundary line of some row.
    """
    if D.cols != 2:
        raise ValueError(f"cone_oracle needs exactly 2 columns, got {D.cols}")
    candidates = [(ONE, Fraction(0)), (Fraction(0), ONE)]
    for d1, d2 in D.entries:
        if d1 * d2 < 0:
            candidates.append((abs(d2), abs(d1)))
    return any(all(d1 * u + d2 * v <= 0 for d1, d2 in D.entries) for u, v in candidates)


def positive_row(D: RationalMatrix) -> int | None:
    """Index of the first row with both entries positive, if any."""
    for i, (d1, d2) in enumerate(D.entries):
        if d1 > 0 and d2 > 0:
            return i
    return None


def rank_n2_criterion(m: RationalMatrix) -> CriterionResult:
    """Corank-two test for the squared system of any evolution algebra.

    ``m`` has one row per equation and one column per unknown square. For
    algebras built from two permutations every row of ``D`` has at most one
    nonzero entry, so the test only certifies for general structure matrices.
    """
    n = m.cols
    r = rank(m)
    if r != n - 2:
        return CriterionResult("rank_n2", Verdict.INAPPLICABLE, f"needs rank {n - 2}", {"rank": r})
    if r == 0:
        # zero matrix: every u solves the system
        return CriterionResult("rank_n2", Verdict.NOT_CERTIFIED, "no dependent rows", {"rank": 0, "D": []})
    red = reduced_coefficients(m, r)
    detail = {
        "rank": r,
        "rows": [i + 1 for i in red.rows],
        "dependent": [c + 1 for c in red.pivot_cols],
        "free": [c + 1 for c in red.free_cols],
        "D": red.d.to_lists(),
    }
    i = positive_row(red.d)
    if i is not None:
        detail["i0"] = red.pivot_cols[i] + 1
        return CriterionResult("rank_n2", Verdict.CERTIFIED, f"row for x_{red.pivot_cols[i] + 1} positive", detail)
    if not cone_oracle(red.d):
        # only the trivial solution although no row is positive
        logger.info("rank n-2 system unique without a positive row: D=%s", detail["D"])
        detail["unique_without_condition"] = True
    return CriterionResult("rank_n2", Verdict.NOT_CERTIFIED, "no row with both entries positive", detail)


def uniqueness_rank_n2(A: PermEvolutionAlgebra) -> CriterionResult:
    return rank_n2_criterion(equation_matrix(A))


def all_criteria(A: PermEvolutionAlgebra) -> tuple[CriterionResult, ...]:
    return (
        uniqueness_by_det(A),
        uniqueness_rank_n1(A),
        uniqueness_sign(A),
        uniqueness_rank_n2(A),
    )


# -- verification -----------------------------------------------------------

def verify_nilpotent(A: PermEvolutionAlgebra, x: Sequence | None = None, *, squares: Sequence | None = None) -> bool:
    """Exact check of x^2 = 0.

    Pass ``x`` for a rational element, or ``squares`` (the values ``x_i^2``)
    when the coordinates themselves are irrational.
    """
    if (x is None) == (squares is None):
        raise ValueError("pass exactly one of x or squares")
    if x is not None:
        return all(c == 0 for c in square(A, x))
    u = [Fraction(v) for v in squares]
    if len(u) != A.n or any(v < 0 for v in u):
        return False
    s = system_matrix(A)
    return all(sum((s[i, j] * u[j] for j in range(A.n)), Fraction(0)) == 0 for i in range(A.n))

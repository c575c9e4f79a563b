"""Weight functions supported on a single coordinate.

``sigma(x) = c * x_k0`` is a character iff column ``k0`` of the structural
matrix vanishes off the diagonal and ``c`` equals the diagonal entry.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import PermEvolutionAlgebra, element, structural_matrix
from .perm import inverse

logger = logging.getLogger(__name__)


class WeightCase(str, enum.Enum):
    PI_FIXED = "pi_fixed"
    TAU_FIXED = "tau_fixed"
    BOTH_FIXED = "both_fixed"


class BaricConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class WeightFunction:
    k0: int
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c == 0:
            raise ValueError("a character must be nonzero")

    def __call__(self, x: Sequence) -> Fraction:
        return self.c * element(x)[self.k0 - 1]


def is_character(A: PermEvolutionAlgebra, w: WeightFunction) -> bool:
    """sigma(e_i e_i) == sigma(e_i)^2 for every basis vector."""
    m = structural_matrix(A)
    k = w.k0 - 1
    for i in range(A.n):
        target = w.c if i == k else Fraction(0)
        if w.c * m[i, k] != target * target:
            return False
    return True


def _column_test(A: PermEvolutionAlgebra) -> dict[int, Fraction]:
    m = structural_matrix(A)
    out = {}
    for k in range(A.n):
        if m[k, k] != 0 and all(m[i, k] == 0 for i in range(A.n) if i != k):
            out[k + 1] = m[k, k]
    return out


def fixed_point_conditions(A: PermEvolutionAlgebra) -> dict[int, tuple[WeightCase, Fraction]]:
    """Fixed-point form of the test: which k0 qualify, and through which case."""
    pi_inv, tau_inv = inverse(A.pi), inverse(A.tau)
    out = {}
    for k in range(1, A.n + 1):
        pf, tf = A.pi(k) == k, A.tau(k) == k
        ap, at = A.a_pi[k - 1], A.a_tau[k - 1]
        if pf and tf:
            if ap + at != 0:
                out[k] = (WeightCase.BOTH_FIXED, ap + at)
        elif pf:
            if ap != 0 and A.a_tau[tau_inv(k) - 1] == 0:
                out[k] = (WeightCase.PI_FIXED, ap)
        elif tf:
            if at != 0 and A.a_pi[pi_inv(k) - 1] == 0:
                out[k] = (WeightCase.TAU_FIXED, at)
    return out


def find_weights(A: PermEvolutionAlgebra) -> list[WeightFunction]:
    by_column = _column_test(A)
    by_fixed_points = fixed_point_conditions(A)
    if set(by_column) != set(by_fixed_points) or any(by_column[k] != by_fixed_points[k][1] for k in by_column):
        raise BaricConsistencyError(
            f"column test {sorted(by_column)} disagrees with fixed-point conditions {sorted(by_fixed_points)}"
        )
    return [WeightFunction(k, c) for k, c in sorted(by_column.items())]


def weight_case(A: PermEvolutionAlgebra, w: WeightFunction) -> WeightCase:
    return fixed_point_conditions(A)[w.k0][0]


def is_baric(A: PermEvolutionAlgebra) -> bool:
    return bool(find_weights(A))

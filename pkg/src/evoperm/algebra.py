"""Evolution algebras whose basis squares are supported on two permutations.

In the natural basis ``e_1..e_n`` the multiplication is::

    e_i * e_j = 0                                   (i != j)
    e_i * e_i = a_pi[i] e_{pi(i)} + a_tau[i] e_{tau(i)}

The coefficient vectors ``a_pi``/``a_tau`` are kept separately; the
structural matrix merges them when ``pi(i) == tau(i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import RationalMatrix, to_rational
from .perm import Permutation, compose, inverse

Element = tuple[Fraction, ...]


class AlgebraError(ValueError):
    pass


class EqualPermutationsError(AlgebraError):
    """Raised when pi == tau; that case is a different theory."""


def element(values: Sequence) -> Element:
    return tuple(to_rational(v) for v in values)


def basis_vector(n: int, i: int) -> Element:
    return tuple(Fraction(int(k == i)) for k in range(1, n + 1))


def zero(n: int) -> Element:
    return (Fraction(0),) * n


@dataclass(frozen=True)
class PermEvolutionAlgebra:
    pi: Permutation
    tau: Permutation
    a_pi: tuple[Fraction, ...]
    a_tau: tuple[Fraction, ...]
    # blocks of a direct-sum decomposition may legitimately have pi == tau
    allow_equal: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        pi = self.pi if isinstance(self.pi, Permutation) else Permutation(tuple(self.pi))
        tau = self.tau if isinstance(self.tau, Permutation) else Permutation(tuple(self.tau))
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "a_pi", element(self.a_pi))
        object.__setattr__(self, "a_tau", element(self.a_tau))
        n = pi.n
        if tau.n != n:
            raise AlgebraError(f"pi has degree {n} but tau has degree {tau.n}")
        if len(self.a_pi) != n or len(self.a_tau) != n:
            raise AlgebraError(
                f"coefficient vectors must have length {n}, got "
                f"{len(self.a_pi)} and {len(self.a_tau)}"
            )
        if pi == tau and not self.allow_equal:
            raise EqualPermutationsError("pi and tau must differ")

    @property
    def n(self) -> int:
        return self.pi.n

    def coefficient(self, i: int, j: int) -> Fraction:
        """Structural constant a_ij (1-based), collisions summed."""
        total = Fraction(0)
        if self.pi(i) == j:
            total += self.a_pi[i - 1]
        if self.tau(i) == j:
            total += self.a_tau[i - 1]
        return total

    def j_map(self) -> Permutation:
        """k -> tau^{-1}(pi(k)); its cycles decouple x^2 = 0."""
        return compose(inverse(self.tau), self.pi)

    def basis_square(self, i: int) -> Element:
        out = [Fraction(0)] * self.n
        out[self.pi(i) - 1] += self.a_pi[i - 1]
        out[self.tau(i) - 1] += self.a_tau[i - 1]
        return tuple(out)

    def multiply(self, x: Sequence, y: Sequence) -> Element:
        return multiply(self, x, y)

    def square(self, x: Sequence) -> Element:
        return square(self, x)


def structural_matrix(A: PermEvolutionAlgebra) -> RationalMatrix:
    rows = []
    for i in range(1, A.n + 1):
        rows.append(A.basis_square(i))
    return RationalMatrix(tuple(rows))


def system_matrix(A: PermEvolutionAlgebra) -> RationalMatrix:
    """Row ``j`` holds the coefficients of the equation for coordinate ``j`` of x^2."""
    return structural_matrix(A).transpose()


def equation_matrix(A: PermEvolutionAlgebra) -> RationalMatrix:
    """Rows of the system matrix reordered so row ``k`` is the equation for ``pi(k)``.

    This is the order in which the equations ``a_{k pi(k)} x_k^2 +
    a_{j_k pi(k)} x_{j_k}^2`` are naturally written down, one per ``k``.
    """
    s = system_matrix(A)
    return s.select([A.pi(k) - 1 for k in range(1, A.n + 1)], range(A.n))


def _check_dim(A: PermEvolutionAlgebra, *vectors: Sequence) -> None:
    for v in vectors:
        if len(v) != A.n:
            raise AlgebraError(f"element has {len(v)} coordinates, algebra has dimension {A.n}")


def multiply(A: PermEvolutionAlgebra, x: Sequence, y: Sequence) -> Element:
    _check_dim(A, x, y)
    x = element(x)
    y = element(y)
    out = [Fraction(0)] * A.n
    for i in range(1, A.n + 1):
        w = x[i - 1] * y[i - 1]
        if w:
            out[A.pi(i) - 1] += w * A.a_pi[i - 1]
            out[A.tau(i) - 1] += w * A.a_tau[i - 1]
    return tuple(out)


def square(A: PermEvolutionAlgebra, x: Sequence) -> Element:
    """x^2, grouped by target coordinate pi(k)."""
    _check_dim(A, x)
    x = element(x)
    j = A.j_map()
    out = [Fraction(0)] * A.n
    for k in range(1, A.n + 1):
        jk = j(k)
        out[A.pi(k) - 1] = (
            A.a_pi[k - 1] * x[k - 1] ** 2 + A.a_tau[jk - 1] * x[jk - 1] ** 2
        )
    return tuple(out)

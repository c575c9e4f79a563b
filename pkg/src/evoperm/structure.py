"""Direct-sum decomposition and canonical relabelings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import PermEvolutionAlgebra, structural_matrix
from .perm import Permutation, cycles, inverse, is_full_cycle


class StructureError(ValueError):
    """A hypothesis of a structure result fails; ``hypothesis`` names it."""

    def __init__(self, message: str, hypothesis: str = ""):
        super().__init__(message)
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class BasisMap:
    """``e'_i = e_{assignment[i-1]}``: target basis vector ``i`` is source vector ``assignment[i-1]``."""

    source_dim: int
    target_dim: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(v) for v in self.assignment))
        if len(self.assignment) != self.target_dim:
            raise ValueError("assignment length must equal target_dim")
        if len(set(self.assignment)) != len(self.assignment):
            raise ValueError("assignment must be injective")
        if any(not 1 <= v <= self.source_dim for v in self.assignment):
            raise ValueError("assignment points outside the source basis")

    @property
    def is_bijective(self) -> bool:
        return self.source_dim == self.target_dim

    def pull_back(self, x_source: Sequence) -> tuple:
        """Coordinates of a source element in the target basis."""
        return tuple(x_source[s - 1] for s in self.assignment)

    def push_forward(self, x_target: Sequence) -> tuple:
        out = [Fraction(0)] * self.source_dim
        for t, s in enumerate(self.assignment):
            out[s - 1] = x_target[t]
        return tuple(out)


@dataclass(frozen=True)
class Block:
    support: frozenset[int]
    algebra: PermEvolutionAlgebra
    map: BasisMap


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple[Block, ...]

    @property
    def maps(self) -> tuple[BasisMap, ...]:
        return tuple(b.map for b in self.blocks)


def _require_nonzero(A: PermEvolutionAlgebra) -> None:
    for i in range(A.n):
        if A.a_pi[i] * A.a_tau[i] == 0:
            raise StructureError(
                f"a_pi[{i + 1}] * a_tau[{i + 1}] is zero; every coefficient must be nonzero",
                "nonzero coefficients",
            )


def _relabel(A: PermEvolutionAlgebra, order: Sequence[int], allow_equal: bool = False) -> PermEvolutionAlgebra:
    local = {s: m for m, s in enumerate(order, start=1)}
    pi = Permutation(tuple(local[A.pi(s)] for s in order))
    tau = Permutation(tuple(local[A.tau(s)] for s in order))
    return PermEvolutionAlgebra(
        pi,
        tau,
        tuple(A.a_pi[s - 1] for s in order),
        tuple(A.a_tau[s - 1] for s in order),
        allow_equal=allow_equal,
    )


def decompose(A: PermEvolutionAlgebra) -> Decomposition:
    """Split ``A`` along the common cycle supports of pi and tau.

    Each block is relabeled by walking its pi-cycle from the smallest index.
    Blocks of size one or two necessarily have equal local permutations.
    """
    _require_nonzero(A)
    pi_cycles = cycles(A.pi)
    tau_supports = {frozenset(c) for c in cycles(A.tau)}
    mismatched = [c for c in pi_cycles if frozenset(c) not in tau_supports]
    if mismatched:
        tau_of = {}
        for c in cycles(A.tau):
            for i in c:
                tau_of[i] = c
        c = mismatched[0]
        other = tau_of[c[0]]
        raise StructureError(
            f"pi-cycle {c} and tau-cycle {other} share {c[0]} but have different supports",
            "equal cycle supports",
        )
    blocks = []
    for c in pi_cycles:
        sub = _relabel(A, c, allow_equal=True)
        blocks.append(Block(frozenset(c), sub, BasisMap(A.n, len(c), c)))
    return Decomposition(tuple(blocks))


def direct_sum(A: PermEvolutionAlgebra, decomposition: Decomposition) -> list[list[Fraction]]:
    """Structural matrix of the blocks reassembled in the parent's labels."""
    out = [[Fraction(0)] * A.n for _ in range(A.n)]
    for block in decomposition.blocks:
        m = structural_matrix(block.algebra)
        asg = block.map.assignment
        for i in range(block.algebra.n):
            for j in range(block.algebra.n):
                out[asg[i] - 1][asg[j] - 1] += m[i, j]
    return out


def _orbit_order(p: Permutation) -> tuple[int, ...]:
    order = [1]
    while len(order) < p.n:
        order.append(p(order[-1]))
    return tuple(order)


def canonical_cycle_identity(A: PermEvolutionAlgebra) -> tuple[PermEvolutionAlgebra, BasisMap]:
    """Relabel ``e'_i = e_{pi^{i-1}(1)}`` so that pi becomes ``(1 2 ... n)``; tau stays the identity."""
    if not is_full_cycle(A.pi):
        raise StructureError("pi is not a single n-cycle", "pi is an n-cycle")
    if not A.tau.is_identity():
        raise StructureError("tau is not the identity", "tau is the identity")
    _require_nonzero(A)
    order = _orbit_order(A.pi)
    return _relabel(A, order), BasisMap(A.n, A.n, order)


def canonical_inverse_pair(A: PermEvolutionAlgebra) -> tuple[PermEvolutionAlgebra, BasisMap]:
    """Relabel so pi becomes ``(1 2 ... n)`` and tau becomes ``(1 n n-1 ... 2)``."""
    if not is_full_cycle(A.pi):
        raise StructureError("pi is not a single n-cycle", "pi is an n-cycle")
    if A.tau != inverse(A.pi):
        raise StructureError("tau is not pi^-1", "tau is pi^-1")
    _require_nonzero(A)
    order = _orbit_order(A.pi)
    return _relabel(A, order), BasisMap(A.n, A.n, order)


def verify_isomorphism(A: PermEvolutionAlgebra, B: PermEvolutionAlgebra, basis_map: BasisMap) -> bool:
    """Does ``e'_i -> e_{assignment(i)}`` carry B's multiplication table onto A's?"""
    if A.n != B.n or basis_map.source_dim != A.n or basis_map.target_dim != B.n:
        raise ValueError(f"dimension mismatch: {A.n} vs {B.n}")
    ma, mb = structural_matrix(A), structural_matrix(B)
    asg = basis_map.assignment
    return all(
        ma[asg[i] - 1, asg[j] - 1] == mb[i, j] for i in range(B.n) for j in range(B.n)
    )


def availability(A: PermEvolutionAlgebra) -> dict[str, str]:
    """Which structure results apply, or the hypothesis that fails."""
    out = {}
    for name, fn in (
        ("decompose", decompose),
        ("canonical_cycle_identity", canonical_cycle_identity),
        ("canonical_inverse_pair", canonical_inverse_pair),
    ):
        try:
            fn(A)
            out[name] = "available"
        except StructureError as exc:
            out[name] = f"unavailable: {exc}"
    return out

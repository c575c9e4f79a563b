"""Random and exhaustive instance generators."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .algebra import PermEvolutionAlgebra
from .exactnum import RationalMatrix, rank
from .perm import Permutation, all_permutations, compose, inverse

SMALL_COEFFS = tuple(Fraction(v) for v in (-2, -1, 0, 1, 2))


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_algebra(
    rng: random.Random,
    n: int,
    coeffs: Sequence[Fraction] = SMALL_COEFFS,
) -> PermEvolutionAlgebra:
    if n < 2:
        raise ValueError("pi != tau needs n >= 2")
    pi = random_permutation(rng, n)
    tau = random_permutation(rng, n)
    while tau == pi:
        tau = random_permutation(rng, n)
    return PermEvolutionAlgebra(
        pi,
        tau,
        tuple(rng.choice(coeffs) for _ in range(n)),
        tuple(rng.choice(coeffs) for _ in range(n)),
    )


def random_rational(rng: random.Random, num: int = 9, den: int = 5, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if q or not nonzero:
            return q


def permutation_pairs(n: int) -> Iterator[tuple[Permutation, Permutation]]:
    """Ordered pairs with pi != tau, lexicographic in (pi, tau)."""
    perms = list(all_permutations(n))
    for pi in perms:
        for tau in perms:
            if pi != tau:
                yield pi, tau


def enumerate_algebras(n: int, coeffs: Sequence[Fraction]) -> Iterator[tuple[int, PermEvolutionAlgebra]]:
    """Every algebra of degree ``n`` with coefficients from ``coeffs``, deterministically ordered."""
    for pair_id, (pi, tau) in enumerate(permutation_pairs(n), start=1):
        for values in product(coeffs, repeat=2 * n):
            yield pair_id, PermEvolutionAlgebra(pi, tau, values[:n], values[n:])


def random_cycle(rng: random.Random, support: Sequence[int]) -> dict[int, int]:
    """A single cycle through every element of ``support``, as a mapping."""
    order = list(support)
    rng.shuffle(order)
    return {order[i]: order[(i + 1) % len(order)] for i in range(len(order))}


def _nonzero_coeffs(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng) for _ in range(n))


def random_matched_support(rng: random.Random, n: int) -> PermEvolutionAlgebra:
    """pi and tau with the same cycle supports and nonzero coefficients.

    Cycles of length one or two are determined by their support, so pi != tau
    needs a block of size three or more and hence ``n >= 3``.
    """
    if n < 3:
        raise ValueError("matched supports with pi != tau need n >= 3")
    while True:
        labels = list(range(1, n + 1))
        rng.shuffle(labels)
        pi_map, tau_map = {}, {}
        while labels:
            size = rng.randint(1, len(labels))
            support, labels = labels[:size], labels[size:]
            pi_map.update(random_cycle(rng, support))
            tau_map.update(random_cycle(rng, support))
        pi = Permutation(tuple(pi_map[i] for i in range(1, n + 1)))
        tau = Permutation(tuple(tau_map[i] for i in range(1, n + 1)))
        if pi != tau:
            return PermEvolutionAlgebra(pi, tau, _nonzero_coeffs(rng, n), _nonzero_coeffs(rng, n))


def random_full_cycle(rng: random.Random, n: int) -> Permutation:
    m = random_cycle(rng, range(1, n + 1))
    return Permutation(tuple(m[i] for i in range(1, n + 1)))


def random_cycle_identity(rng: random.Random, n: int) -> PermEvolutionAlgebra:
    return PermEvolutionAlgebra(
        random_full_cycle(rng, n), Permutation.identity(n), _nonzero_coeffs(rng, n), _nonzero_coeffs(rng, n)
    )


def random_inverse_pair(rng: random.Random, n: int) -> PermEvolutionAlgebra:
    """n >= 3, since a 2-cycle is its own inverse."""
    pi = random_full_cycle(rng, n)
    return PermEvolutionAlgebra(pi, inverse(pi), _nonzero_coeffs(rng, n), _nonzero_coeffs(rng, n))


def random_closed_chain(rng: random.Random, p: int) -> PermEvolutionAlgebra:
    """Degree ``p`` algebra whose j-map is one p-cycle carrying a nontrivial nilpotent family.

    Every step ratio ``-a_pi[l_k] / a_tau[l_{k+1}]`` is positive and the ratios
    multiply to 1 around the cycle.
    """
    if p < 2:
        raise ValueError("a closed chain needs p >= 2")
    pi = random_permutation(rng, p)
    j = random_full_cycle(rng, p)
    tau = compose(pi, inverse(j))
    order = [1]
    while len(order) < p:
        order.append(j(order[-1]))
    steps = [abs(random_rational(rng)) for _ in range(p - 1)]
    prod = Fraction(1)
    for s in steps:
        prod *= s
    steps.append(1 / prod)
    a_pi = list(_nonzero_coeffs(rng, p))
    a_tau = [Fraction(0)] * p
    for k in range(p):
        lk, lnext = order[k], order[(k + 1) % p]
        a_tau[lnext - 1] = -a_pi[lk - 1] / steps[k]
    return PermEvolutionAlgebra(pi, tau, a_pi, a_tau)


def random_corank2_matrix(rng: random.Random, n: int, coeffs: Sequence[Fraction] = SMALL_COEFFS) -> list[list[Fraction]]:
    """An ``n x n`` integer-entry matrix of rank exactly ``n - 2`` (n >= 3)."""
    while True:
        left = [[rng.choice(coeffs) for _ in range(n - 2)] for _ in range(n)]
        right = [[rng.choice(coeffs) for _ in range(n)] for _ in range(n - 2)]
        m = [[sum((left[i][t] * right[t][c] for t in range(n - 2)), Fraction(0)) for c in range(n)] for i in range(n)]
        if rank(RationalMatrix.from_rows(m)) == n - 2:
            return m

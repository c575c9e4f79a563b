import random
from fractions import Fraction

import pytest

from evoperm.algebra import PermEvolutionAlgebra
from evoperm.idempotent import solve_n2
from evoperm.nilpotent import solve
from evoperm.oracle import (
    SearchMethod,
    hausdorff,
    idempotent_search_n2,
    nilpotent_oracle,
    nonnegative_kernel_witness,
    squared_residual,
    substitution_residual,
)
from evoperm.sampling import random_rational


def two_dim(a, b, c, d):
    return PermEvolutionAlgebra((2, 1), (1, 2), [a, c], [d, b])


def test_examples_have_only_trivial(example1, example2):
    for A in (example1, example2):
        rep = nilpotent_oracle(A)
        assert rep.exhausted and rep.method is SearchMethod.EXACT_ELIMINATION
        assert not rep.nontrivial


def test_two_cycle_family_matches_ray():
    # j-map (1 2): a_pi[1] u_1 + a_tau[2] u_2 = 0 and a_pi[2] u_2 + a_tau[1] u_1 = 0
    A = PermEvolutionAlgebra((1, 2), (2, 1), [1, -2], [2, -1])
    rep = nilpotent_oracle(A)
    assert rep.nontrivial
    (u,) = rep.witnesses
    (ray,) = solve(A).rays
    scale = u[ray.indices[0] - 1]
    assert all(u[i - 1] == scale * r2 for i, r2 in zip(ray.indices, ray.squared_ratios))
    assert squared_residual(A, u) == 0


def test_dimension_cap():
    n = 13
    A = PermEvolutionAlgebra(tuple(list(range(2, n + 1)) + [1]), tuple(range(1, n + 1)), [1] * n, [1] * n)
    with pytest.raises(ValueError):
        nilpotent_oracle(A)


def test_kernel_witness_general():
    assert nonnegative_kernel_witness([[1, 1]], 2) is None
    assert nonnegative_kernel_witness([[1, -1]], 2) == (1, 1)
    assert nonnegative_kernel_witness([[0, 0]], 2) == (1, 0)


def test_substitution_residual(allones2):
    assert substitution_residual(allones2, (0, 0)) == 0
    assert substitution_residual(allones2, (Fraction(1, 2), Fraction(1, 2))) == 0
    assert substitution_residual(allones2, (1, 1)) == 1
    assert substitution_residual(allones2, (0.5, 0.5)) == 0.0
    A = PermEvolutionAlgebra((1, 2), (2, 1), [1, -2], [2, -1])
    assert substitution_residual(A, (0, 0), kind="nilpotent") == 0
    assert substitution_residual(A, (1, 0), kind="nilpotent") > 0
    with pytest.raises(ValueError):
        substitution_residual(A, (0, 0), kind="other")


def test_search_all_ones():
    rep = idempotent_search_n2(1, 1, 1, 1)
    assert rep.witnesses == ((0.0, 0.0), (0.5, 0.5))
    assert not rep.exhausted


def test_search_root_counts():
    assert len(idempotent_search_n2(1, 1, 1, 2).witnesses) == 2
    assert len(idempotent_search_n2(-3, 2, -1, 2).witnesses) == 4


def test_search_rejects_zero():
    with pytest.raises(ValueError):
        idempotent_search_n2(1, 0, 1, 1)


def test_hausdorff():
    assert hausdorff([], []) == 0
    assert hausdorff([(0, 0)], []) == float("inf")
    assert hausdorff([(0, 0), (1, 1)], [(0, 0.5)]) == 1


def test_search_agrees_with_solver():
    rng = random.Random(3)
    for _ in range(300):
        a, b, c, d = (random_rational(rng) for _ in range(4))
        got = [tuple(map(float, p.coords)) for p in solve_n2(two_dim(a, b, c, d)).points]
        assert hausdorff(sorted(got), idempotent_search_n2(a, b, c, d).witnesses) <= 1e-7

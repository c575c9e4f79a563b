import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evoperm.algebra import PermEvolutionAlgebra, square
from evoperm.idempotent import (
    CubicCase,
    IdempotentError,
    classify_cubic,
    cubic_roots,
    idempotent_residual,
    idempotent_system,
    idempotents,
    particular_idempotents,
    recover_y,
    section3_coefficients,
    solve_n2,
    uniform_constant,
    verify_idempotent,
)
from evoperm.sampling import random_rational

from conftest import algebras, elements


def two_dim(a, b, c, d):
    """a x^2 + b y^2 = y, d x^2 + c y^2 = x."""
    return PermEvolutionAlgebra((2, 1), (1, 2), [a, c], [d, b])


def test_system_display_shape():
    A = two_dim(2, 3, 5, 7)
    assert section3_coefficients(A) == (2, 3, 5, 7)
    eqs = idempotent_system(A)
    assert [(e.target, dict(e.terms)) for e in eqs] == [(2, {1: 2, 2: 3}), (1, {2: 5, 1: 7})]


def test_tau_swap_shape_reads_same_coefficients():
    A = PermEvolutionAlgebra((1, 2), (2, 1), [7, 3], [2, 5])
    assert section3_coefficients(A) == (2, 3, 5, 7)


def test_zero_algebra():
    A = PermEvolutionAlgebra((2, 3, 1), (1, 2, 3), [0] * 3, [0] * 3)
    assert all(e.terms[0][1] == 0 for e in idempotent_system(A))
    assert verify_idempotent(A, (0, 0, 0))
    assert not verify_idempotent(A, (1, 0, 0))
    (pt,) = particular_idempotents(A).points
    assert pt.coords == (0, 0, 0)


def test_all_ones_n2(allones2):
    res = solve_n2(allones2)
    assert res.complete
    assert [p.coords for p in res.points] == [(0, 0), (Fraction(1, 2), Fraction(1, 2))]
    assert all(p.exact for p in res.points)
    assert res.classification.degenerate


def test_verify_examples(allones2):
    assert verify_idempotent(allones2, (0, 0))
    assert verify_idempotent(allones2, (Fraction(1, 2), Fraction(1, 2)))
    assert not verify_idempotent(allones2, (1, 1))
    assert square(allones2, (1, 1)) == (2, 2)
    assert idempotent_residual(allones2, (0.5 + 1e-12, 0.5)) < 1e-9


def test_particular_uniform():
    A = PermEvolutionAlgebra((3, 1, 4, 2), (2, 3, 4, 1), [1] * 4, [1] * 4)
    got = particular_idempotents(A)
    assert not got.complete
    assert got.found == ("zero", "uniform")
    assert got.points[1].coords == (Fraction(1, 2),) * 4
    assert verify_idempotent(A, got.points[1].coords)


def test_particular_non_uniform():
    A = PermEvolutionAlgebra((3, 1, 4, 2), (2, 3, 4, 1), [1, 2, 1, 1], [1] * 4)
    assert uniform_constant(A) is None
    got = particular_idempotents(A)
    assert got.found == ("zero",) and not got.complete


def test_classify_degenerate_all_ones():
    cls = classify_cubic(1, 1, 1, 1)
    assert cls.case is CubicCase.DEG_LINEAR
    assert cubic_roots(cls) == [(Fraction(1, 2), 1)]


def test_classify_one_real():
    cls = classify_cubic(1, 1, 1, 2)
    assert (cls.p, cls.q, cls.delta) == (Fraction(5, 3), Fraction(11, 27), Fraction(621, 2916))
    assert cls.case is CubicCase.ONE_REAL
    real = [r for r in np.roots([float(v) for v in cls.cubic_coefficients()]) if abs(r.imag) < 1e-9]
    assert len(real) == 1


def test_classify_three_real():
    cls = classify_cubic(-3, 2, -1, 2)
    assert (cls.p, cls.q, cls.delta) == (Fraction(-10, 3), Fraction(-29, 27), Fraction(-13, 12))
    assert cls.case is CubicCase.THREE_REAL
    roots = [float(r) for r, _ in cubic_roots(cls)]
    s13 = 13 ** 0.5
    assert roots == pytest.approx(sorted([1, (3 - s13) / 2, (3 + s13) / 2]), abs=1e-12)
    assert cubic_roots(cls)[1][0] == 1  # rational root returned exactly


def test_classify_two_real():
    cls = classify_cubic(-3, 1, -2, 4)
    assert cls.case is CubicCase.TWO_REAL and cls.delta == 0
    assert cubic_roots(cls) == [(-2, 1), (Fraction(1, 2), 2)]


def test_classify_triple():
    b, c = Fraction(3), Fraction(2)
    a, d = b ** 3 / (27 * c * c), b * b / (3 * c)
    cls = classify_cubic(a, b, c, d)
    assert cls.case is CubicCase.ONE_REAL_TRIPLE and cls.p == cls.q == 0
    ((x, mult),) = cubic_roots(cls)
    assert mult == 3 and x == 2 * b / (3 * cls.k) == 9 * c / (4 * b * b)


def test_classify_rejects_zero():
    with pytest.raises(IdempotentError):
        classify_cubic(0, 1, 1, 1)


def test_outside_classification():
    # bd = ac and b^2 + cd = 0: a=-1, b=1, c=-1, d=1
    cls = classify_cubic(-1, 1, -1, 1)
    assert cls.outside_classification and cls.expected_real_roots == 0
    res = solve_n2(two_dim(-1, 1, -1, 1))
    assert len(res.points) == 1 and "outside_classification" in res.found


def test_three_real_system_solutions():
    res = solve_n2(two_dim(-3, 2, -1, 2))
    assert len(res.points) == 4
    for p in res.points:
        assert verify_idempotent(two_dim(-3, 2, -1, 2), p.coords)


def test_solve_n2_rejects_wrong_shape(example1):
    with pytest.raises(IdempotentError):
        solve_n2(example1)
    with pytest.raises(IdempotentError):
        solve_n2(two_dim(0, 1, 1, 1))
    assert not idempotents(example1).complete


@settings(max_examples=300, deadline=None)
@given(st.tuples(*[st.fractions(-5, 5, max_denominator=4).filter(bool)] * 4))
def test_classification_matches_numeric_count(abcd):
    cls = classify_cubic(*abcd)
    coeffs = [float(v) for v in cls.cubic_coefficients()]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    roots = [float(r) for r, _ in cubic_roots(cls)]
    assert len(roots) == cls.expected_real_roots
    for r in roots:
        assert abs(np.polyval(coeffs, r)) <= 1e-7 * max(1.0, max(abs(c) for c in coeffs))
    A = two_dim(*abcd)
    for p in solve_n2(A).points:
        assert verify_idempotent(A, p.coords)


def test_y_recovery_identity():
    rng = random.Random(5)
    for _ in range(200):
        a, b, c, d = (random_rational(rng) for _ in range(4))
        for x, _ in cubic_roots(classify_cubic(a, b, c, d)):
            y = recover_y(a, b, c, d, x)
            scale = max(1.0, abs(float(x)) ** 2, abs(float(y)) ** 2)
            assert abs(float(a * x * x + b * y * y - y)) <= 1e-8 * scale


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_uniform_solution_validates(data):
    n = data.draw(st.integers(2, 6))
    A = data.draw(algebras(min_n=n, max_n=n))
    dval = data.draw(st.fractions(-4, 4, max_denominator=3).filter(bool))
    j = A.j_map()
    # rebalance a_tau so every equation has coefficient sum dval
    a_tau = list(A.a_tau)
    for k in range(1, n + 1):
        if j(k) == k:
            a_tau[k - 1] = dval - A.a_pi[k - 1]
        else:
            a_tau[j(k) - 1] = dval - A.a_pi[k - 1]
    B = PermEvolutionAlgebra(A.pi, A.tau, A.a_pi, a_tau)
    assert uniform_constant(B) == dval
    pts = particular_idempotents(B).points
    assert pts[1].coords == (1 / dval,) * n
    assert idempotent_residual(B, pts[1].coords) == 0


@settings(max_examples=100, deadline=None)
@given(algebras(max_n=4), st.data())
def test_particular_points_verify(A, data):
    for p in particular_idempotents(A).points:
        assert verify_idempotent(A, p.coords)
    x = data.draw(elements(A.n))
    assert verify_idempotent(A, x) == (square(A, x) == tuple(x))

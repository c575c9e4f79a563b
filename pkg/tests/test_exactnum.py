from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from evoperm.algebra import equation_matrix
from evoperm.exactnum import (
    LinearAlgebraError,
    RationalMatrix,
    cramer_minor,
    det,
    rank,
    reduced_coefficients,
    sqrt_normalize,
    to_rational,
)

from conftest import example1_with, rationals


def cofactor_det(rows):
    if not rows:
        return Fraction(1)
    total = Fraction(0)
    for j, v in enumerate(rows[0]):
        if v:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * v * cofactor_det(minor)
    return total


def gauss_rank(rows):
    a = [list(r) for r in rows]
    r = 0
    for c in range(len(a[0]) if a else 0):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c] / a[r][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


@st.composite
def matrices(draw, min_dim=1, max_dim=5, square=False, sparse=True):
    rows = draw(st.integers(min_dim, max_dim))
    cols = rows if square else draw(st.integers(min_dim, max_dim))
    entry = st.one_of(st.just(Fraction(0)), rationals()) if sparse else rationals()
    return RationalMatrix.from_rows(
        [draw(st.lists(entry, min_size=cols, max_size=cols)) for _ in range(rows)]
    )


def test_det_identity():
    assert det(RationalMatrix.identity(4)) == 1


def test_det_example1():
    m = equation_matrix(example1_with(a13=-1))
    assert det(m) == 0
    assert rank(m) == 3
    m3 = m.select(range(3), range(3))
    m14 = cramer_minor(m3, 0, m.column(3)[:3])
    assert m3.to_lists() == [[-1, 1, 0], [0, 1, 0], [0, 0, 2]]
    assert m14.to_lists() == [[0, 1, 0], [1, 1, 0], [0, 0, 2]]
    assert (det(m3), det(m14)) == (-2, -2)


def test_det_rejects_rectangular():
    with pytest.raises(LinearAlgebraError):
        det(RationalMatrix.zeros(2, 3))


def test_rank_examples(example2):
    assert rank(RationalMatrix.zeros(3, 3)) == 0
    assert rank(equation_matrix(example2)) == 2


@settings(max_examples=200)
@given(matrices(square=True))
def test_det_matches_cofactor_expansion(m):
    assert det(m) == cofactor_det(m.to_lists())


@settings(max_examples=200)
@given(matrices())
def test_rank_matches_gauss_and_transpose(m):
    assert rank(m) == gauss_rank(m.to_lists()) == rank(m.transpose())


def test_reduced_coefficients_full_rank():
    red = reduced_coefficients(RationalMatrix.identity(3), 3)
    assert red.d.rows == 3 and red.free_cols == ()


def test_reduced_coefficients_example1_has_only_trivial_nonnegative_solution():
    m = equation_matrix(example1_with(a13=-1))
    red = reduced_coefficients(m, 3)
    assert red.d.rows == 3 and red.d.cols == 1
    # u_dep = -d * u_free: some dependent square is forced negative for u_free > 0
    assert any(-row[0] < 0 for row in red.d.entries)


def test_reduced_coefficients_rank_mismatch():
    with pytest.raises(LinearAlgebraError):
        reduced_coefficients(RationalMatrix.identity(3), 2)


def _check_substitution(m, red, free_values):
    u = [Fraction(0)] * m.cols
    for c, v in zip(red.free_cols, free_values):
        u[c] = v
    for c, v in zip(red.pivot_cols, red.dependent_values(free_values)):
        u[c] = v
    for row in m.entries:
        assert sum(a * x for a, x in zip(row, u)) == 0


def test_reduced_coefficients_example2_substitution(example2):
    m = equation_matrix(example2)
    red = reduced_coefficients(m, 2)
    assert red.d.rows == 2 and red.d.cols == 2
    for free in [(Fraction(1), Fraction(0)), (Fraction(3, 7), Fraction(-5, 2)), (Fraction(2), Fraction(9))]:
        _check_substitution(m, red, free)


@settings(max_examples=150)
@given(matrices(min_dim=2), st.lists(rationals(), min_size=5, max_size=5))
def test_reduced_coefficients_satisfy_every_equation(m, free_values):
    red = reduced_coefficients(m, rank(m))
    _check_substitution(m, red, free_values[: len(red.free_cols)])


@settings(max_examples=100)
@given(matrices(min_dim=2))
def test_reduced_coefficients_match_cramer(m):
    red = reduced_coefficients(m, rank(m))
    if not red.pivot_cols:
        return
    block = m.select(red.rows, red.pivot_cols)
    db = det(block)
    for j, f in enumerate(red.free_cols):
        col = m.select(red.rows, [f]).column(0)
        for i in range(len(red.pivot_cols)):
            assert red.d[i, j] == det(cramer_minor(block, i, col)) / db


@pytest.mark.parametrize(
    "v, coef, rad",
    [("4/9", Fraction(2, 3), 1), (8, 2, 2), (0, 0, 1), ("1/2", Fraction(1, 2), 2), (72, 6, 2)],
)
def test_sqrt_normalize(v, coef, rad):
    s = sqrt_normalize(v)
    assert (s.coefficient, s.radicand) == (coef, rad)


def test_sqrt_normalize_rejects_negative():
    with pytest.raises(ValueError):
        sqrt_normalize(-1)


def test_sqrt_normalize_large_prime_square():
    p = 1_000_003
    s = sqrt_normalize(Fraction(p * p * 6, 5))
    assert s.radicand == 30 and s.coefficient == Fraction(p, 5)


@given(st.fractions(min_value=0, max_value=10 ** 6, max_denominator=10 ** 4))
def test_sqrt_normalize_squares_back(v):
    s = sqrt_normalize(v)
    assert s.squared() == v
    # squarefree integer radicand
    assert s.radicand.denominator == 1
    r = s.radicand.numerator
    assert all(r % (k * k) for k in range(2, 200) if k * k <= r)


@pytest.mark.parametrize("text, value", [("3/4", Fraction(3, 4)), ("-2", -2), ("0.125", Fraction(1, 8)), (" 5 ", 5)])
def test_to_rational(text, value):
    assert to_rational(text) == value


def test_to_rational_rejects_floats():
    with pytest.raises(TypeError):
        to_rational(0.1)

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from evoperm.algebra import PermEvolutionAlgebra
from evoperm.perm import Permutation
from evoperm.reports import fixture


def permutations_of(n):
    return st.permutations(list(range(1, n + 1))).map(lambda xs: Permutation(tuple(xs)))


def rationals(max_num=6, max_den=4, nonzero=False):
    s = st.fractions(min_value=-max_num, max_value=max_num, max_denominator=max_den)
    return s.filter(bool) if nonzero else s


@st.composite
def algebras(draw, min_n=2, max_n=5, coeffs=None, nonzero=False):
    n = draw(st.integers(min_n, max_n))
    pi = draw(permutations_of(n))
    tau = draw(permutations_of(n).filter(lambda t: t != pi))
    coeff = coeffs if coeffs is not None else rationals(nonzero=nonzero)
    a_pi = draw(st.lists(coeff, min_size=n, max_size=n))
    a_tau = draw(st.lists(coeff, min_size=n, max_size=n))
    return PermEvolutionAlgebra(pi, tau, a_pi, a_tau)


@st.composite
def elements(draw, n):
    return tuple(draw(st.lists(rationals(), min_size=n, max_size=n)))


@pytest.fixture
def example1():
    return fixture("example1")


@pytest.fixture
def example2():
    return fixture("example2")


@pytest.fixture
def allones2():
    return fixture("section3-allones")


def example1_with(**coeffs):
    """Example 1 algebra with symbolic coefficients a_ij overridden by keyword ``aij``."""
    pi, tau = Permutation((3, 1, 4, 2)), Permutation((2, 3, 4, 1))
    a_pi = [Fraction(1)] * 4
    a_tau = [Fraction(1)] * 4
    for name, value in coeffs.items():
        i, j = int(name[1]), int(name[2])
        if pi(i) == j:
            a_pi[i - 1] = Fraction(value)
        if tau(i) == j:
            a_tau[i - 1] = Fraction(value)
    return PermEvolutionAlgebra(pi, tau, a_pi, a_tau)


ACCEPTANCE: list[tuple[int, bool, str]] = []


def record_criterion(number: int, ok: bool, detail: str) -> bool:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE.append((number, ok, detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

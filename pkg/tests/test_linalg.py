from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capelli.errors import SingularSystem
from capelli.linalg import identity, inverse, matmul, matvec, solve_linear_exact, solve_many

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def invertible_systems(draw):
    n = draw(st.integers(1, 6))
    # unitriangular factors give an invertible product with rational entries
    lower = [[Fraction(int(i == j)) if i <= j else draw(small) for j in range(n)] for i in range(n)]
    upper = [[draw(small) if i < j else Fraction(int(i == j)) * draw(small.filter(bool)) for j in range(n)]
             for i in range(n)]
    A = matmul([list(r) for r in zip(*lower)], upper)
    x = [draw(small) for _ in range(n)]
    return A, x


@settings(max_examples=200, deadline=None)
@given(invertible_systems())
def test_solve_round_trip(system):
    A, x = system
    b = matvec(A, x)
    assert solve_linear_exact(A, b) == x


def test_solve_many_columns():
    A = [[2, 1], [1, 3]]
    cols = solve_many(A, [[1, 0], [0, 1]])
    assert cols == [[Fraction(3, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(2, 5)]]


def test_inverse_is_inverse():
    A = [[Fraction(1, 2), 3, 0], [1, Fraction(-2, 3), 4], [0, 5, 1]]
    assert matmul(A, inverse(A)) == identity(3)


def test_needs_pivoting():
    assert solve_linear_exact([[0, 1], [1, 0]], [3, 4]) == [4, 3]


def test_singular_raises():
    with pytest.raises(SingularSystem):
        solve_linear_exact([[1, 2], [2, 4]], [1, 2])
    with pytest.raises(ArithmeticError):
        solve_linear_exact([[0, 0], [0, 0]], [0, 0])


def test_shape_errors():
    with pytest.raises(ValueError):
        solve_linear_exact([[1, 2]], [1])
    with pytest.raises(ValueError):
        solve_linear_exact([[1]], [1, 2])


def test_empty_system():
    assert solve_linear_exact([], []) == []

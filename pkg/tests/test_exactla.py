from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from eicat.exactla import (RatMatrix, cokernel_projection, image_basis, kernel_basis, kron, rank, solve,
                           to_fraction, unvec, vec)

entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return RatMatrix(rows)


def _sym(m):
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator)
                                         for row in m.tolist() for x in row])


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == _sym(m).rank()


@given(matrices())
def test_kernel_is_kernel_of_right_dimension(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.cols == len(_sym(m).nullspace())
    assert rank(k) == k.cols


@given(matrices())
def test_image_basis_spans_column_space(m):
    b = image_basis(m)
    assert b.cols == rank(m)
    assert rank(RatMatrix.hstack([b, m])) == rank(m)


@given(matrices())
def test_cokernel_projection(m):
    p, d = cokernel_projection(m)
    assert d == m.rows - rank(m)
    if d:
        assert (p @ m).is_zero()
    assert rank(p) == d


@given(matrices(), st.lists(entries, min_size=5, max_size=5))
def test_solve_consistent_system(a, xs):
    x = RatMatrix.column(xs[:a.cols])
    b = a @ x
    y = solve(a, b)
    assert y is not None and a @ y == b


def test_solve_inconsistent_returns_none():
    a = RatMatrix([[1, 1], [2, 2]])
    assert solve(a, RatMatrix.column([1, 3])) is None


@given(matrices(3, 3), matrices(3, 3), st.data())
def test_kron_vec_identity(a, b, data):
    rows = data.draw(st.lists(st.lists(entries, min_size=a.cols, max_size=a.cols), min_size=b.cols,
                              max_size=b.cols))
    x = RatMatrix(rows)
    assert kron(a, b) @ vec(x) == vec(b @ x @ a.T)


def test_kron_against_sympy():
    a = RatMatrix([[1, Fraction(1, 2)], [0, -3]])
    b = RatMatrix([[2, 0, 1]])
    k = kron(a, b)
    expect = sympy.kronecker_product(_sym(a), _sym(b))
    assert _sym(k) == expect


@given(matrices())
def test_vec_unvec_round_trip(m):
    assert unvec([to_fraction(x) for x in vec(m).column_list(0)], m.rows, m.cols) == m


def test_inverse_and_exactness():
    m = RatMatrix([[Fraction(1, 3), 1], [1, 1]])
    assert m @ m.inverse() == RatMatrix.identity(2)
    assert m.inverse()[0, 0] == Fraction(-3, 2)


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        RatMatrix([[1, 2], [3]])


def test_empty_shapes():
    z = RatMatrix.zeros(3, 0)
    assert rank(z) == 0
    assert kernel_basis(RatMatrix.zeros(0, 2)).cols == 2
    assert RatMatrix.hstack([], rows=2).shape == (2, 0)


def test_to_fraction_accepts_strings():
    assert to_fraction("3/4") == Fraction(3, 4)

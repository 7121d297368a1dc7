from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from threelie.exact import (
    Matrix, WedgeIndex, in_span, kernel_basis, perm_sign, rank, rank_of_vectors, scalar, solve,
    sort_with_sign,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse entries make rank deficiency common
    entry = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), small)
    return Matrix.from_rows([[draw(entry) for _ in range(c)] for _ in range(r)])


def to_sympy(M):
    return sympy.Matrix(M.rows, M.cols, [sympy.Rational(x.numerator, x.denominator) for x in M.entries])


@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == to_sympy(M).rank()


@given(matrices())
def test_kernel_basis_spans_the_nullspace(M):
    K = kernel_basis(M)
    assert len(K) == M.cols - to_sympy(M).rank()
    for v in K:
        assert not any(M @ v)
    if K:
        assert rank_of_vectors(K) == len(K)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_finds_preimages_and_reports_none(M, coeffs):
    x = tuple(coeffs[:M.cols])
    b = M @ x
    y = solve(M, b)
    assert y is not None and M @ y == b
    # a vector outside the column space has no solution
    aug = [list(M.column(j)) for j in range(M.cols)]
    target = [Fraction(1)] + [Fraction(0)] * (M.rows - 1)
    if not in_span(aug, target):
        assert solve(M, target) is None


@given(st.permutations(range(6)))
def test_perm_sign_matches_parity(p):
    assert perm_sign(p) == Permutation(list(p)).signature()


def test_repeated_indices():
    with pytest.raises(ValueError):
        perm_sign([0, 2, 2])
    assert sort_with_sign((2, 2)) == (0, None)


def test_sort_with_sign():
    assert sort_with_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_with_sign((1, 0)) == (-1, (0, 1))


def test_matrix_conventions():
    M = Matrix.from_columns([[1, 2], [3, 4], [5, 6]])
    assert M.shape == (2, 3)
    assert M.column(1) == (3, 4)
    assert M @ (0, 1, 0) == (3, 4)
    assert M.T.shape == (3, 2)
    assert (M @ M.T).to_rows() == [[35, 44], [44, 56]]
    assert Matrix.identity(2).kron(M).shape == (4, 6)


def test_scalars_are_exact():
    assert scalar("2/6") == Fraction(1, 3)
    assert scalar(3) == 3
    with pytest.raises(TypeError):
        scalar(0.5)


def test_wedge_index():
    W = WedgeIndex(4)
    assert W.dim == 6
    assert W.pairs[0] == (0, 1)
    assert W.index(2, 1) == (-1, W.pairs.index((1, 2)))
    e = [[int(i == k) for i in range(4)] for k in range(4)]
    assert W.wedge(e[0], e[1]) == tuple(Fraction(int(k == 0)) for k in range(6))
    assert W.wedge(e[1], e[0]) == tuple(Fraction(-int(k == 0)) for k in range(6))

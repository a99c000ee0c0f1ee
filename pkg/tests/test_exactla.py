from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mixspline.exactla import ExactMatrix, RowSpace, kernel_basis, rank, rref, solve


def test_rank_examples():
    assert rank(ExactMatrix.identity(3)) == 3
    assert rank(ExactMatrix.zeros(2, 3)) == 0
    assert rank(ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6]])) == 1


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3)) == []
    assert kernel_basis(ExactMatrix(0, 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    M = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    ker = kernel_basis(M)
    assert len(ker) == 2
    for v in ker:
        assert sum(a * b for a, b in zip((1, 2, 3), v)) == 0
        assert M.apply(v) == (0, 0)


def test_empty_shapes():
    assert rank(ExactMatrix(0, 0)) == 0
    assert rank(ExactMatrix(3, 0)) == 0
    assert kernel_basis(ExactMatrix(3, 0)) == []


def test_rational_entries_stay_exact():
    M = ExactMatrix.from_rows([[Fraction(1, 3), Fraction(1, 7)], [Fraction(2, 3), Fraction(2, 7)]])
    assert rank(M) == 1
    (v,) = kernel_basis(M)
    assert M.apply(v) == (0, 0)
    assert all(isinstance(x, (int, Fraction)) for x in v)


def test_floats_rejected():
    with pytest.raises(TypeError):
        ExactMatrix.from_rows([[0.5]])


def test_matrix_is_immutable():
    M = ExactMatrix.identity(2)
    with pytest.raises(AttributeError):
        M.rows = 5


def test_rref_and_solve():
    M = ExactMatrix.from_rows([[2, 4, 1], [1, 2, 0]])
    R, piv = rref(M)
    assert piv == (0, 2)
    assert R.row(0) == (1, 2, 0)
    assert R.row(1) == (0, 0, 1)
    x = solve(M, [3, 1])
    assert M.apply(x) == (3, 1)
    with pytest.raises(ValueError):
        solve(ExactMatrix.from_rows([[1, 1], [1, 1]]), [0, 1])


def test_row_space_coordinates():
    space = RowSpace([(1, 1, 0), (0, 1, 1), (1, 2, 1)], 3)
    assert space.dim == 2
    v = (2, 5, 3)
    c = space.coordinates(v)
    rebuilt = [sum(ci * row[k] for ci, row in zip(c, space.basis)) for k in range(3)]
    assert rebuilt == list(v)
    assert not space.contains((1, 0, 0))


small_ints = st.integers(-4, 4)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, entries=rationals, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    # bias towards rank deficiency by sometimes repeating combinations of rows
    rows = [draw(st.lists(entries, min_size=c, max_size=c)) for _ in range(r)]
    if r >= 2 and draw(st.booleans()):
        a, b = draw(small_ints), draw(small_ints)
        rows[-1] = [a * x + b * y for x, y in zip(rows[0], rows[1])]
    return ExactMatrix(r, c, [e for row in rows for e in row])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_exact_kernel(M):
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == M.cols
    for v in ker:
        assert all(x == 0 for x in M.apply(v))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    S = sympy.Matrix(M.rows, M.cols, [sympy.Rational(e.numerator, e.denominator) for e in
                                      map(Fraction, M.entries)]) if M.rows else None
    expected = S.rank() if S is not None else 0
    assert rank(M) == expected


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_of_transpose(M):
    assert rank(M) == rank(M.transpose())


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False), rationals.filter(lambda q: q != 0))
def test_rank_invariant_under_row_operations(M, rnd, scale):
    rows = M.to_rows()
    rnd.shuffle(rows)
    if rows:
        i = rnd.randrange(len(rows))
        rows[i] = tuple(scale * e for e in rows[i])
    assert rank(ExactMatrix(M.rows, M.cols, [e for r in rows for e in r])) == rank(M)

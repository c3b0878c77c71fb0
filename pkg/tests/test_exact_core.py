from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.errors import DimensionMismatchError, NotInSpanError
from services.exact_core import (
    EchelonSpan,
    Matrix,
    kernel_basis,
    rank,
    solve_affine,
    subquotient,
    to_scalar,
    unit_vector,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_solve_affine_unique_solution():
    m = Matrix.from_rows([[1, 2], [3, 4]])
    sol = solve_affine(m, [5, 6])
    assert sol.particular == (Fraction(-4), Fraction(9, 2))
    assert sol.kernel_basis == ()


def test_solve_affine_inconsistent_returns_none():
    m = Matrix.from_rows([[1, 1], [1, 1]])
    assert solve_affine(m, [1, 2]) is None


def test_kernel_basis_follows_free_columns():
    m = Matrix.from_rows([[1, 2, 3]])
    assert kernel_basis(m) == ((-2, 1, 0), (-3, 0, 1))
    assert rank(m) == 1


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        to_scalar(0.5)
    assert to_scalar("3/4") == Fraction(3, 4)


def test_matrix_shape_checks():
    with pytest.raises(DimensionMismatchError):
        Matrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionMismatchError):
        Matrix.from_rows([[1, 2]]).apply([1])


def test_subquotient_decomposition():
    e1, e2 = unit_vector(3, 0), unit_vector(3, 1)
    sq = subquotient([e1, e2], [e1], ambient_dim=3)
    assert sq.dimension == 1
    assert sq.representatives == (e2,)
    parts = sq.decompose([2, 3, 0])
    assert parts.coordinates == (3,)
    assert parts.remainder == (2, 0, 0)
    assert sq.lift([5]) == (0, 5, 0)


def test_subquotient_rejects_boundaries_outside_cycles():
    with pytest.raises(NotInSpanError):
        subquotient([unit_vector(2, 0)], [unit_vector(2, 1)])
    sq = subquotient([unit_vector(2, 0)], [], ambient_dim=2)
    with pytest.raises(NotInSpanError):
        sq.decompose([0, 1])


def test_echelon_span_membership():
    span = EchelonSpan(3)
    assert span.add([1, 1, 0])
    assert span.add([0, 1, 1])
    assert not span.add([1, 2, 1])
    assert span.contains([2, 3, 1])
    assert not span.contains([0, 0, 1])
    assert len(span) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=3, max_size=3),
       st.lists(small, min_size=4, max_size=4))
def test_solver_reproduces_consistent_right_hand_sides(rows, x):
    m = Matrix.from_rows(rows)
    y = m.apply(x)
    sol = solve_affine(m, y)
    assert sol is not None
    assert m.apply(sol.particular) == y
    assert len(sol.kernel_basis) == m.cols - rank(m)
    for k in sol.kernel_basis:
        assert not any(m.apply(k))

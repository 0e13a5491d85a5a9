from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices, rationals, square_matrices
from liediff.linalg import (DimensionError, RationalMatrix, Subspace, format_rational, nullspace, parse_rational,
                            rank, solve, to_rational)


def test_parse_and_format_roundtrip():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4)) == "4"
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_floats_only_when_integral():
    assert to_rational(2.0) == 2
    with pytest.raises(ValueError):
        to_rational(0.1)


@given(rationals)
def test_format_parse_inverse(x):
    assert parse_rational(format_rational(x)) == x


def test_known_rank_and_nullspace():
    m = RationalMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    ns = nullspace(m)
    assert ns.dim == 1
    assert not any(m @ ns.basis[0])


def test_shape_mismatch_raises():
    with pytest.raises(DimensionError):
        RationalMatrix.identity(2) + RationalMatrix.identity(3)
    with pytest.raises(DimensionError):
        RationalMatrix.identity(2) @ RationalMatrix.identity(3)


@given(matrices())
def test_rank_nullity(m):
    ns = nullspace(m)
    assert rank(m) + ns.dim == m.cols
    for v in ns.basis:
        assert not any(m @ v)


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4))
def test_rank_of_product_bounded(a, b):
    if a.cols != b.rows:
        b = RationalMatrix([[1] * b.cols for _ in range(a.cols)])
    assert rank(a @ b) <= min(rank(a), rank(b))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square_matrices(n), square_matrices(n), square_matrices(n))))
def test_matmul_associative_and_distributive(abc):
    a, b, c = abc
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c


@given(matrices(), st.data())
def test_solve_returns_solution_when_consistent(m, data):
    x = [data.draw(rationals) for _ in range(m.cols)]
    b = m @ x
    sol = solve(m, b)
    assert sol is not None and m @ sol == b


def test_solve_inconsistent():
    assert solve(RationalMatrix([[1, 1], [1, 1]]), [1, 2]) is None


vectors = st.integers(0, 4).flatmap(lambda k: st.lists(st.lists(rationals, min_size=4, max_size=4),
                                                        min_size=k, max_size=k))


@given(vectors, vectors)
def test_grassmann_formula(us, vs):
    u, v = Subspace.span(4, us), Subspace.span(4, vs)
    assert (u + v).dim + u.intersect(v).dim == u.dim + v.dim
    assert (u + v).contains_subspace(u)
    assert u.contains_subspace(u.intersect(v)) and v.contains_subspace(u.intersect(v))


@given(vectors)
def test_canonical_basis_is_unique(us):
    a = Subspace.span(4, us)
    b = Subspace.span(4, list(reversed(us)) + [[2 * x for x in u] for u in us])
    assert a == b


@given(vectors, st.lists(rationals, min_size=4, max_size=4))
def test_coordinates_reconstruct(us, c):
    s = Subspace.span(4, us)
    v = [sum(ci * b[j] for ci, b in zip(c, s.basis)) for j in range(4)]
    coords = s.coordinates(v)
    assert coords is not None
    assert [sum(ci * b[j] for ci, b in zip(coords, s.basis)) for j in range(4)] == v


def test_zero_and_full_subspace():
    assert Subspace.zero(3).dim == 0
    assert Subspace.full(3).dim == 3
    assert Subspace.full(3).contains([5, -1, Fraction(1, 3)])

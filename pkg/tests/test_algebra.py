from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liediff.acceptance import VALIDATED_BUILTINS
from liediff.algebra import (ParseError, StructureTable, TableError, ad_matrix, builtin, ccr, center, emit_table,
                             from_matrix_basis, jacobi_residual, multiply, parse_table, validate)
from liediff.linalg import RationalMatrix


def test_sl2_products():
    t = builtin("sl2")
    h, e, f = (t.basis_vector(i) for i in range(3))
    assert multiply(t, h, e) == (0, 2, 0)
    assert multiply(t, h, f) == (0, 0, -2)
    assert multiply(t, e, f) == (1, 0, 0)


def test_ad_h_is_diagonal():
    t = builtin("sl2")
    assert ad_matrix(t, t.basis_vector(0)) == RationalMatrix([[0, 0, 0], [0, 2, 0], [0, 0, -2]])


@pytest.mark.parametrize("name", VALIDATED_BUILTINS)
def test_builtins_validate(name):
    assert validate(builtin(name)).ok


@pytest.mark.parametrize("name,dim,zdim", [("sl2", 3, 0), ("sl3", 8, 0), ("o3", 3, 0), ("gl2", 4, 1),
                                           ("abelian:2", 2, 2), ("ccr:1", 3, 1), ("ccr:2", 5, 1),
                                           ("car:1", 3, 1), ("car:2", 5, 1)])
def test_dimensions_and_centers(name, dim, zdim):
    t = builtin(name)
    assert t.dim == dim
    assert center(t).dim == zdim


def test_car_degrees_and_anticommutator():
    t = builtin("car:1")
    assert t.degrees == (1, 1, 0)
    # [pi, phi] = [phi, pi] = 1 for odd generators
    assert t.product(0, 1) == t.product(1, 0) == (0, 0, 1)


def test_ccr_with_form():
    t = builtin("ccr:2")
    assert validate(t).ok
    with pytest.raises(TableError):
        ccr(2, form=[[1, 1], [1, 1]])


def test_unknown_builtin():
    with pytest.raises(TableError):
        builtin("e8")


def test_antisymmetry_violation_reported_with_indices():
    t = StructureTable.from_entries(2, {(0, 1, 1): 1, (1, 0, 1): 1})
    report = validate(t)
    assert not report.ok
    anti = [v for v in report.violations if v.kind == "antisymmetry"]
    assert anti and anti[0].indices == (0, 1)
    assert "(1, 2)" in anti[0].describe()


def test_jacobi_violation_detected():
    # antisymmetric but not Lie: [a1,a2]=a3, [a2,a3]=a3, [a1,a3]=a1
    t = StructureTable.from_entries(3, {(0, 1, 2): 1, (1, 2, 2): 1, (0, 2, 0): 1})
    report = validate(t)
    assert "jacobi" in report.kinds()
    assert "antisymmetry" not in report.kinds()


def test_parity_violation_detected():
    t = StructureTable.from_entries(2, {(0, 1, 1): 1}, degrees=(1, 1))
    assert "parity" in validate(t).kinds()


def test_graded_jacobi_car_zero():
    t = builtin("car:2")
    n = t.dim
    assert all(not any(jacobi_residual(t, a, b, c)) for a in range(n) for b in range(n) for c in range(n))


def test_from_matrix_basis_rejects_non_closed():
    with pytest.raises(TableError):
        from_matrix_basis([RationalMatrix([[0, 1], [0, 0]]), RationalMatrix([[0, 0], [1, 0]])])


@pytest.mark.parametrize("name", VALIDATED_BUILTINS)
def test_roundtrip(name):
    t = builtin(name)
    assert parse_table(emit_table(t)) == t


def test_parse_comments_and_rationals():
    text = "# sl2 scaled\ndim 3\nbasis h e f\nc 1 2 2 2   # [h,e]=2e\nc 1 3 3 -2\nc 2 3 1 1/1\n"
    assert parse_table(text) == builtin("sl2")


@pytest.mark.parametrize("text,line", [
    ("c 1 2 3 1\n", 1),
    ("dim 2\nc 1 2 x\n", 2),
    ("dim 2\n\nc 1 2 3 1\n", 3),
    ("dim 2\nc 1 2 2 1/0\n", 2),
    ("dim 2\nc 1 2 2 1\nc 1 2 2 1\n", 3),
    ("dim 2\ndegrees 0 2\n", 2),
    ("dim 2\nfoo\n", 2),
])
def test_parse_errors_cite_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_table(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
                          st.integers(-3, 3).map(Fraction)), max_size=6),
       st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_emit_parse_roundtrip_random(entries, degrees):
    raw = {}
    for i, j, k, v in entries:
        if i < j or (i == j and degrees[i]):
            raw[i, j, k] = v
    t = StructureTable.from_entries(3, raw, degrees=degrees)
    assert parse_table(emit_table(t)) == t


def test_abelian_products_zero():
    t = builtin("abelian:3")
    assert all(not any(t.product(i, j)) for i in range(3) for j in range(3))

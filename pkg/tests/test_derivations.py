import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from liediff.algebra import ad_basis, builtin, ccr, sl
from liediff.derivations import (DerivationError, bracket, closure_failures, derivation_algebra, family_containment,
                                 family_generators, inner_derivations, is_derivation, leibniz_residual,
                                 leibniz_system, outer_report, report_json)
from liediff.linalg import RationalMatrix
from liediff.operators import LinearOperator, OperatorSpace

# (name, full, even, odd, inner) computed by the solver and cross-checked against sympy below
EXPECTED = [
    ("sl2", 3, 3, 0, 3), ("sl3", 8, 8, 0, 8), ("o3", 3, 3, 0, 3), ("gl2", 4, 4, 0, 3), ("gl3", 9, 9, 0, 8),
    ("abelian:2", 4, 4, 0, 0), ("ccr:1", 6, 6, 0, 2), ("ccr:2", 15, 15, 0, 4),
    ("car:1", 4, 2, 2, 2), ("car:2", 11, 7, 4, 4), ("osp1|2", 5, 3, 2, 5),
]


@pytest.mark.parametrize("name,full,even,odd,inner", EXPECTED)
def test_derivation_dimensions(name, full, even, odd, inner):
    t = builtin(name)
    da = derivation_algebra(t)
    assert (da.dim, da.even.dim, da.odd.dim) == (full, even, odd)
    assert inner_derivations(t).dim == inner


@pytest.mark.parametrize("name", ["sl2", "gl2", "o3", "ccr:1", "car:1", "car:2"])
def test_all_pairs_oracle_agrees(name):
    t = builtin(name)
    a, b = derivation_algebra(t), derivation_algebra(t, all_pairs=True)
    assert a.even.subspace == b.even.subspace and a.odd.subspace == b.odd.subspace


@pytest.mark.parametrize("name", ["sl2", "gl2", "ccr:1", "car:1"])
@pytest.mark.parametrize("parity", [0, 1])
def test_sympy_rank_oracle(name, parity):
    t = builtin(name)
    rows, positions = leibniz_system(t, parity, all_pairs=True)
    if not positions:
        return
    da = derivation_algebra(t)
    expected = (da.odd if parity else da.even).dim
    r = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]).rank() if rows else 0
    assert len(positions) - r == expected


def test_sl2_leibniz_system_rank():
    rows, positions = leibniz_system(builtin("sl2"), 0)
    assert len(positions) == 9
    assert sympy.Matrix(rows).rank() == 6


@pytest.mark.parametrize("name", ["sl2", "gl2", "ccr:2", "car:2", "abelian:3"])
def test_basis_passes_leibniz(name):
    t = builtin(name)
    for op in derivation_algebra(t).operators():
        assert is_derivation(t, op)


@pytest.mark.parametrize("name", ["sl2", "gl2", "ccr:1", "car:1"])
def test_closure(name):
    assert closure_failures(derivation_algebra(builtin(name))) == []


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_random_inner_derivations_close(x, y):
    t = builtin("sl2")
    ads = ad_basis(t)
    a = sum((m.scale(c) for m, c in zip(ads[1:], x[1:])), ads[0].scale(x[0]))
    b = sum((m.scale(c) for m, c in zip(ads[1:], y[1:])), ads[0].scale(y[0]))
    assert not leibniz_residual(t, a, 0)
    assert derivation_algebra(t).contains(a.commutator(b))


@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_random_matrix_in_space_iff_leibniz(entries):
    t = builtin("sl2")
    m = RationalMatrix([entries[0:3], entries[3:6], entries[6:9]])
    assert derivation_algebra(t).contains(m) == (not leibniz_residual(t, m, 0))


def test_non_derivation_rejected():
    t = builtin("sl2")
    assert leibniz_residual(t, RationalMatrix.identity(3), 0)


def test_outer_report_gl2():
    rep = outer_report(builtin("gl2"))
    assert rep == {"dim_full": 4, "dim_inner": 3, "dim_outer": 1}


@pytest.mark.parametrize("k", [2, 3])
def test_sl_has_no_outer(k):
    rep = outer_report(sl(k))
    assert rep["dim_outer"] == 0


def test_report_json_schema():
    rep = report_json(builtin("sl2"))
    assert rep["dim_full"] == 3 and rep["dim_inner"] == 3 and rep["dim_outer"] == 0
    assert len(rep["basis"]) == 3 and all(len(v) == 9 for v in rep["basis"])


def test_graded_bracket_of_odd_derivations():
    t = builtin("car:1")
    da = derivation_algebra(t)
    odd = [op for op in da.operators() if op.parity == 1]
    for x in odd:
        for y in odd:
            b = bracket(x, y)
            assert b.parity == 0
            assert not leibniz_residual(t, b.matrix, 0)


def test_bracket_rejects_mixed():
    with pytest.raises(DerivationError):
        bracket(LinearOperator(RationalMatrix.identity(3), "mixed"), LinearOperator(RationalMatrix.identity(3), 0))


@pytest.mark.parametrize("name,family,fam_dim,solver_dim", [
    ("ccr:1", "ccr-generic", 5, 6), ("ccr:2", "ccr-generic", 14, 15),
    ("car:1", "car-generic", 3, 4), ("car:2", "car-generic", 10, 11)])
def test_family_containment(name, family, fam_dim, solver_dim):
    rep = family_containment(builtin(name), family)
    assert rep["all_leibniz"] and rep["contained"]
    assert rep["family_dim"] == fam_dim
    assert rep["solver_dim"] == solver_dim
    assert not rep["equal"]


def test_center_scaling_is_the_missing_derivation():
    t = builtin("ccr:1")
    fam = [op.matrix for _, op in family_generators(t, "ccr-generic")]
    scaling = RationalMatrix([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert not leibniz_residual(t, scaling + RationalMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), 0)
    span = OperatorSpace.span(3, 3, fam)
    assert not span.contains(scaling + RationalMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))


def test_family_requires_matching_table():
    with pytest.raises(DerivationError):
        family_generators(builtin("sl2"), "ccr-generic")
    with pytest.raises(DerivationError):
        family_generators(builtin("ccr:1"), "car-generic")


def test_ccr_with_nonstandard_form():
    t = ccr(2, form=[[2, 1], [1, 1]])
    rep = family_containment(t, "ccr-generic")
    assert rep["all_leibniz"] and rep["contained"]

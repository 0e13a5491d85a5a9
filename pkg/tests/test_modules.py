import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_rationals
from liediff.algebra import ParseError, builtin
from liediff.linalg import DimensionError, RationalMatrix
from liediff.modules import (ModuleFiltration, Representation, check_representation, first_order_module_ops,
                             gl_defining, module_filtration_report, parse_representation, zero_order_module_ops)
from liediff.operators import OperatorSpace
from liediff.realizations import car_first_order, car_representation


def test_gl2_defining():
    r = gl_defining(2)
    assert not check_representation(r)
    assert zero_order_module_ops(r).dim == 1
    assert first_order_module_ops(r).dim == 4
    rep = module_filtration_report(r, 3)
    assert [o["dim"] for o in rep["orders"]] == [1, 4, 4, 4]
    assert rep["orders"][2]["stabilized"]


def test_gl2_multiplications_are_first_order():
    r = gl_defining(2)
    fo = first_order_module_ops(r)
    assert all(fo.contains(m) for m in r.action)


def test_gl3_defining():
    r = gl_defining(3)
    assert zero_order_module_ops(r).dim == 1
    assert first_order_module_ops(r).dim == 9


def test_adjoint_sl2_matches_algebra_filtration():
    r = Representation.adjoint(builtin("sl2"))
    assert not check_representation(r)
    f = ModuleFiltration(r)
    assert [f.level(k).dim for k in range(4)] == [1, 4, 9, 9]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_trivial_representation(m):
    r = Representation.trivial(builtin("sl2"), m)
    assert zero_order_module_ops(r).dim == m * m
    assert first_order_module_ops(r).dim == m * m


def test_broken_representation_detected():
    r = gl_defining(2)
    bad = Representation(r.algebra, 2, (r.action[1], r.action[0]) + r.action[2:])
    assert check_representation(bad)


def test_wrong_shapes_rejected():
    t = builtin("sl2")
    with pytest.raises(DimensionError):
        Representation(t, 2, (RationalMatrix.identity(2),))


def test_car_grassmann_module():
    r = car_representation()
    assert not check_representation(r)
    assert zero_order_module_ops(r).dim == 1
    fo = first_order_module_ops(r)
    assert fo.dim == 4
    fam = OperatorSpace.span(2, 2, [car_first_order(*p).matrix for p in
                                    ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))])
    assert fo.contains_space(fam)


@given(st.lists(small_rationals, min_size=4, max_size=4))
def test_commutant_elements_commute(coeffs):
    r = gl_defining(2)
    z = zero_order_module_ops(r)
    phi = sum((m.scale(c) for m, c in zip(z.basis[1:], coeffs[1:])), z.basis[0].scale(coeffs[0]))
    for a in r.action:
        assert a @ phi == phi @ a


def test_parse_representation():
    text = "algebra builtin:gl2\nmodule_dim 2\nrho 1 1 1 1\nrho 2 1 2 1\nrho 3 2 1 1\nrho 4 2 2 1\n"
    r = parse_representation(text)
    assert r.action == gl_defining(2).action


def test_parse_representation_relative_algebra(tmp_path):
    (tmp_path / "alg.txt").write_text("dim 1\n")
    r = parse_representation("algebra alg.txt\nmodule_dim 2\n", base=tmp_path)
    assert r.algebra.dim == 1 and zero_order_module_ops(r).dim == 4


@pytest.mark.parametrize("text,line", [
    ("algebra builtin:gl2\nmodule_dim 2\nrho 9 1 1 1\n", 3),
    ("module_dim 2\nrho 1 1 1 1\n", 2),
    ("algebra builtin:gl2\nmodule_dim x\n", 2),
])
def test_parse_representation_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_representation(text)
    assert info.value.line == line

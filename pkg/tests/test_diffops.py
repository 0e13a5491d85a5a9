import pytest
from hypothesis import given
from hypothesis import strategies as st

from liediff.algebra import abelian, ad_basis, builtin
from liediff.derivations import derivation_algebra
from liediff.diffops import (Filtration, check_zero_order_with_derivation, commutes_with_multiplication,
                             composition_closure, composition_order_report, diff_ops, filtration_report,
                             zero_order_ops)
from liediff.linalg import RationalMatrix


@pytest.mark.parametrize("name,dims", [
    ("sl2", [1, 4, 9, 9]), ("o3", [1, 4, 9, 9]), ("gl2", [2, 5, 10, 10]),
    ("ccr:1", [3, 7, 7, 7]), ("car:1", [3, 5, 5, 5]), ("abelian:2", [4, 4, 4, 4]),
])
def test_filtration_dimensions(name, dims):
    f = Filtration(builtin(name))
    assert [f.level(k).dim for k in range(4)] == dims


def test_sl3_filtration():
    f = Filtration(builtin("sl3"))
    assert [f.level(k).dim for k in range(4)] == [1, 9, 44, 64]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_abelian_zero_order_is_everything(n):
    assert zero_order_ops(abelian(n)).dim == n * n


def test_stabilization_flags():
    rep = filtration_report(builtin("o3"), 4)
    assert [o["dim"] for o in rep["orders"]] == [1, 4, 9, 9, 9]
    assert [o["stabilized"] for o in rep["orders"]] == [False, False, False, True, True]
    assert Filtration(builtin("o3")).first_stable_order() == 2


@pytest.mark.parametrize("name", ["sl2", "o3", "gl2", "ccr:1"])
def test_monotone(name):
    f = Filtration(builtin(name))
    for k in range(4):
        assert f.space(k + 1).contains_space(f.space(k))


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        diff_ops(builtin("sl2"), -1)


@pytest.mark.parametrize("name", ["sl2", "gl2", "ccr:1"])
def test_zero_order_commute_with_multiplication(name):
    t = builtin(name)
    for phi in zero_order_ops(t).basis:
        assert commutes_with_multiplication(t, phi)


def test_stable_level_is_composition_closure():
    # independent oracle: the associative algebra generated by Diff_1 (with identity from Diff_0)
    t = builtin("sl2")
    f = Filtration(t)
    closure = composition_closure(t, f.space(1).basis)
    assert closure.dim == f.level(5).dim == 9


@pytest.mark.parametrize("name", ["sl2", "o3", "ccr:1"])
def test_zero_order_with_derivation(name):
    t = builtin(name)
    zero = zero_order_ops(t)
    for phi in zero.basis:
        for d in derivation_algebra(t).even.basis:
            r = check_zero_order_with_derivation(t, phi, d, zero)
            assert r["composition_is_derivation"] and r["bracket_is_zero_order"]


def test_zero_order_with_derivation_rejects_bad_input():
    t = builtin("sl2")
    with pytest.raises(ValueError):
        check_zero_order_with_derivation(t, ad_basis(t)[0], ad_basis(t)[1])
    with pytest.raises(ValueError):
        check_zero_order_with_derivation(t, RationalMatrix.identity(3), RationalMatrix.identity(3))


@pytest.mark.parametrize("name", ["sl2", "o3"])
def test_composition_order(name):
    t = builtin(name)
    f = Filtration(t)
    for k in range(5):
        for m in range(5 - k):
            assert composition_order_report(t, k, m, f)["composition_ok"]


@pytest.mark.parametrize("name", ["sl2", "o3"])
@pytest.mark.parametrize("k,m", [(1, 0), (1, 1), (2, 0), (2, 2)])
def test_bracket_order_holds(name, k, m):
    t = builtin(name)
    assert composition_order_report(t, k, m)["bracket_ok"]


@pytest.mark.parametrize("name", ["sl2", "o3"])
@pytest.mark.parametrize("k", [2, 3])
def test_bracket_with_first_order_leaves_diff1(name, k):
    # [Diff_k, Diff_1] is not contained in Diff_1 once Diff_k exceeds Diff_1
    rep = composition_order_report(builtin(name), k, 1)
    assert not rep["bracket_ok"]


def test_explicit_bracket_counterexample():
    t = builtin("sl2")
    h, e, _ = ad_basis(t)
    x = e @ e
    br = x @ h - h @ x
    f = Filtration(t)
    assert f.space(2).contains(x)
    assert br == RationalMatrix([[0, 0, 0], [0, 0, 8], [0, 0, 0]])
    assert not f.space(1).contains(br)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_random_compositions_stay_in_filtration(x, y):
    t = builtin("o3")
    f = Filtration(t)
    b1 = f.space(1).basis
    a = sum((m.scale(c) for m, c in zip(b1[1:], x[1:])), b1[0].scale(x[0]))
    b = sum((m.scale(c) for m, c in zip(b1[1:], y[1:])), b1[0].scale(y[0]))
    assert f.space(2).contains(a @ b)

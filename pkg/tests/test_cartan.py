import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcartan.cartan import CartanModel, ThetaInCartanInput, classical_d_C
from eqcartan.graded import Element
from eqcartan.scalars import Scalar

from conftest import ID3, tensor_for


def _rot(g=1):
    return tensor_for("abelian(1)", "rotation", ((g,),))


def _xs(t):
    m = t.module
    return {
        "x1": m.index((1, 0), ()), "x2": m.index((0, 1), ()),
        "dx1": m.index((0, 0), (0,)), "dx2": m.index((0, 0), (1,)),
    }


@pytest.mark.parametrize("g", [0, 1, 3])
def test_contraction_of_dx1(g):
    t = _rot(g)
    x = _xs(t)
    c = CartanModel(t)
    out = c.d_C(t.alg.module_element(x["dx1"]))
    expected = -(Scalar(1) + Scalar(0, g)) * t.alg.mul(t.alg.phi(0), t.alg.module_element(x["x2"]))
    assert out == expected


def test_plus_convention_flips_contraction():
    t = _rot(1)
    x = t.alg.module_element(_xs(t)["dx1"])
    minus, plus = CartanModel(t, "minus"), CartanModel(t, "plus")
    assert minus.d_C(x) == -plus.d_C(x)
    with pytest.raises(ValueError):
        CartanModel(t, "sideways")


def test_theta_rejected():
    t = _rot()
    c = CartanModel(t)
    with pytest.raises(ThetaInCartanInput):
        c.apply_d(t.alg.theta(0))
    with pytest.raises(ThetaInCartanInput):
        c.evaluate_at(t.alg.theta(0), [1])


@pytest.mark.parametrize("setup", [
    ("abelian(1)", "rotation", ((1,),)),
    ("su2", "rotation", None),
    ("su2", "rotation", ID3),
    ("su2", "point", None),
])
@pytest.mark.parametrize("sign", ["minus", "plus"])
def test_square_is_curvature(setup, sign):
    c = CartanModel(tensor_for(*setup), sign)
    assert c.d_C_squared_defect(4).ok


def test_square_vanishes_on_invariants():
    for setup in [("abelian(1)", "rotation", ((2,),)), ("su2", "rotation", None), ("su2", "point", None)]:
        assert CartanModel(tensor_for(*setup)).invariant_square_check(4).ok


def test_casimir_is_invariant():
    t = tensor_for("su2", "point")
    c = CartanModel(t)
    a = t.alg
    casimir = a.mul(a.phi(0), a.phi(0)) + a.mul(a.phi(1), a.phi(1)) + a.mul(a.phi(2), a.phi(2))
    inv = c.invariant_subspace(4)
    assert inv[4].contains(casimir.terms)
    assert inv[4].dim == 1
    assert not inv[2].contains(a.mul(a.phi(0), a.phi(0)).terms)


def test_untwisted_matches_classical():
    t = tensor_for("su2", "rotation")
    c = CartanModel(t)
    ref = classical_d_C(t)
    for mono in c.basis_up_to(4):
        assert c.d_C.on_mono(mono) == ref.on_mono(mono)


def _random_theta_free(t, rng, top=4):
    basis = t.alg.basis_up_to(top, theta_free=True)
    terms = {}
    for mono in rng.sample(basis, min(6, len(basis))):
        terms[mono] = Scalar(Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-2, 2)))
    return Element({k: v for k, v in terms.items() if v})


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), coeffs=st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_evaluation_intertwines(seed, coeffs):
    t = tensor_for("su2", "rotation", ID3)
    c = CartanModel(t)
    x = _random_theta_free(t, random.Random(seed))
    lhs = c.evaluate_at(c.d_C(x), coeffs)
    rhs = c.evaluated_differential(coeffs)(c.evaluate_at(x, coeffs))
    assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}


def test_evaluation_against_sympy():
    t = tensor_for("su2", "rotation")
    c = CartanModel(t)
    x = _random_theta_free(t, random.Random(7))
    X = [Fraction(2), Fraction(-1, 3), Fraction(5)]
    got = c.evaluate_at(x, X)
    syms = sympy.symbols("P1:4")
    ref: dict = {}
    for (_, phi, m), coef in x.terms.items():
        mono = sympy.Mul(*[s**e for s, e in zip(syms, phi)])
        val = mono.subs(dict(zip(syms, map(sympy.Rational, X)))) * (sympy.Rational(coef.re) + sympy.I * sympy.Rational(coef.im))
        ref[m] = sympy.expand(ref.get(m, 0) + val)
    for m, v in ref.items():
        g = got.get(m, Scalar(0))
        assert sympy.expand(v - (sympy.Rational(g.re) + sympy.I * sympy.Rational(g.im))) == 0
    with pytest.raises(ValueError):
        c.evaluate_at(x, [1, 2])

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcartan.graded import Algebra, Element, MissingGeneratorImage, Derivation, merge_theta
from eqcartan.scalars import I, Scalar

from conftest import tensor_for

SETUPS = [("abelian(2)", "point"), ("su2", "point"), ("abelian(1)", "rotation"), ("su2", "rotation")]


def _elements(alg, top, max_terms=3):
    monos = alg.basis_up_to(top)
    coeff = st.builds(lambda a, b: Scalar(a) + I * b, st.integers(-3, 3), st.integers(-1, 1))
    return st.lists(st.tuples(st.sampled_from(monos), coeff), min_size=0, max_size=max_terms).map(
        lambda pairs: sum((Element.monomial(m, c) for m, c in pairs), Element()))


def _homogeneous(alg, top):
    monos = alg.basis_up_to(top)
    return st.sampled_from(monos).map(Element.monomial)


@pytest.mark.parametrize("name, module", SETUPS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_graded_commutative(name, module, data):
    alg = tensor_for(name, module).alg
    x = data.draw(_homogeneous(alg, 3))
    y = data.draw(_homogeneous(alg, 3))
    dx = alg.degree(next(iter(x.terms)))
    dy = alg.degree(next(iter(y.terms)))
    sign = -1 if dx * dy % 2 else 1
    assert alg.mul(x, y) == alg.mul(y, x).scale(sign)


@pytest.mark.parametrize("name, module", SETUPS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_associative(name, module, data):
    alg = tensor_for(name, module).alg
    x, y, z = (data.draw(_elements(alg, 2)) for _ in range(3))
    assert alg.mul(alg.mul(x, y), z) == alg.mul(x, alg.mul(y, z))


@pytest.mark.parametrize("name, module", SETUPS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_leibniz(name, module, data):
    t = tensor_for(name, module)
    alg = t.alg
    x = data.draw(_homogeneous(alg, 3))
    y = data.draw(_elements(alg, 3))
    dx = alg.degree(next(iter(x.terms)))
    for op in [t.D, t.i_tilde[0], t.L_tilde[-1], t.i_locked[0]]:
        sign = -1 if (op.degree * dx) % 2 else 1
        assert op(alg.mul(x, y)) == alg.mul(op(x), y) + alg.mul(x, op(y)).scale(sign)


@pytest.mark.parametrize("name, module", SETUPS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_format_parse_round_trip(name, module, data):
    alg = tensor_for(name, module).alg
    x = data.draw(_elements(alg, 4, 5))
    assert alg.parse(alg.format(x)) == x


def test_canonical_order_degree_two():
    alg = tensor_for("abelian(2)", "point").alg
    printed = [alg.format(Element.monomial(m)) for m in alg.basis_of_degree(2)]
    assert printed == ["t1^t2", "p1", "p2"]


def test_theta_anticommutes_and_squares_to_zero():
    alg = tensor_for("su2", "point").alg
    t1, t2 = alg.theta(0), alg.theta(1)
    assert alg.mul(t1, t1) == Element()
    assert alg.mul(t2, t1) == -alg.mul(t1, t2)
    assert merge_theta((0, 2), (1,)) == (-1, (0, 1, 2))
    assert merge_theta((0,), (0,)) == (0, None)


def test_koszul_sign_on_module_contraction():
    t = tensor_for("abelian(1)", "rotation")
    alg, mod = t.alg, t.module
    dx1 = mod.index((0, 0), (0,))
    x2 = mod.index((0, 1), ())
    omega = alg.module_element(dx1)
    got = t.i_tilde[0](alg.mul(alg.theta(0), omega))
    # i~_1(theta^1 (x) w) = 1 (x) w - theta^1 (x) iota_1 w, iota_1 dx1 = x2
    assert got == omega - alg.mul(alg.theta(0), alg.module_element(x2))


def test_format_examples():
    alg = tensor_for("su2", "point").alg
    x = alg.parse("t1^t3*p2^2 - 1/2*p1 + (1+I)*t2")
    assert alg.format(x) == "(1+1*I)*t2 - 1/2*p1 + t1^t3*p2^2"
    assert alg.format(Element()) == "0"


def test_missing_generator_image():
    alg = Algebra(2, tensor_for("abelian(2)", "point").module)
    with pytest.raises(MissingGeneratorImage):
        Derivation(alg, 1, [alg.one()], [alg.one(), alg.one()])


def test_parse_error():
    alg = tensor_for("su2", "point").alg
    with pytest.raises(ValueError):
        alg.parse("t1 + $")

import pytest

from eqcartan.lie import LieVector
from eqcartan.scalars import I, Scalar

from conftest import ID3, tensor_for


SETUPS = [
    ("abelian(1)", "rotation", ((1,),)),
    ("su2", "rotation", None),
    ("su2", "rotation", ID3),
    ("abelian(2)", "rotation", ((0, 1), (0, 0))),
]


@pytest.mark.parametrize("setup", SETUPS)
def test_tensor_identities(setup):
    assert tensor_for(*setup).check_tensor_identities(3).ok


@pytest.mark.parametrize("setup", SETUPS)
def test_twisted_pairs_cartan_formula(setup):
    assert tensor_for(*setup).twisted_cartan_check(3).ok


@pytest.mark.parametrize("setup", SETUPS + [("su2", "point", None)])
@pytest.mark.parametrize("mode", ["twisted_pairs", "all_pairs"])
def test_D_preserves_basic(setup, mode):
    assert tensor_for(*setup).check_basic_preserved(4, mode).ok


def test_twisted_reduces_to_untwisted_when_Y_vanishes():
    t = tensor_for("su2", "rotation", ID3)
    zero = LieVector.zero(3)
    monos = t.alg.basis_up_to(3)
    for k in range(3):
        e = LieVector.basis(3, k)
        op, ref = t.i_tilde_twisted(e, zero), t.i_tilde[k]
        assert all(op.on_mono(m) == ref.on_mono(m) for m in monos)


def test_X_zero_is_pure_module_operator():
    t = tensor_for("su2", "rotation")
    zero = LieVector.zero(3)
    monos = t.alg.basis_up_to(3)
    for k in range(3):
        op = t.L_tilde_twisted(zero, LieVector.basis(3, k))
        for m in monos:
            expected = {key: I * c for key, c in t.mod_lie[k].on_mono(m).items()}
            assert op.on_mono(m) == expected


def test_locked_pair_uses_twist():
    t = tensor_for("abelian(1)", "rotation", ((3,),))
    x, y = t.locked_pair([1])
    assert list(y) == [Scalar(3)]
    with pytest.raises(ValueError):
        t.i_tilde_twisted([1, 0], [0])


def test_basic_definition_matches_sampled_pairs():
    assert tensor_for("su2", "rotation").basic_definition_check(3).ok
    assert tensor_for("abelian(1)", "rotation", ((1,),)).basic_definition_check(4).ok


def test_basic_examples_on_a_point():
    t = tensor_for("abelian(1)", "point")
    basic = t.basic_subspace(4)
    assert [basic[d].dim for d in range(5)] == [1, 0, 1, 0, 1]
    assert basic[2].contains(t.alg.phi(0).terms)
    assert not basic[1].contains(t.alg.theta(0).terms)


def test_all_pairs_is_stricter():
    # all_pairs also demands 1 (x) iota_k = 0 on its own
    t = tensor_for("su2", "rotation")
    tp = [t.basic_subspace(4, "twisted_pairs")[d].dim for d in range(5)]
    ap = [t.basic_subspace(4, "all_pairs")[d].dim for d in range(5)]
    assert tp == [4, 3, 5, 10, 14]
    assert ap == [4, 3, 0, 0, 4]


def test_unknown_mode():
    with pytest.raises(ValueError):
        tensor_for("su2", "point").basic_operators("some")

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqcartan.lie import (
    LieAlgebraSpec,
    LieVector,
    bracket,
    preset,
    twist_apply,
    twist_equivariance_check,
    validate,
)

small = st.integers(-3, 3)
vec3 = st.lists(small, min_size=3, max_size=3).map(LieVector)


@pytest.mark.parametrize("name", ["abelian(1)", "abelian(2)", "su2", "so3", "heisenberg3"])
def test_presets_are_lie_algebras(name):
    assert validate(preset(name)).ok


def test_su2_bracket():
    su2 = preset("su2")
    assert bracket(su2, LieVector.basis(3, 0), LieVector.basis(3, 1)) == LieVector.basis(3, 2)


def test_heisenberg_bracket():
    h = preset("heisenberg3")
    assert bracket(h, LieVector.basis(3, 0), LieVector.basis(3, 1)) == LieVector.basis(3, 2)
    assert bracket(h, LieVector.basis(3, 0), LieVector.basis(3, 2)) == LieVector.zero(3)


def test_antisymmetry_violation_located():
    spec = LieAlgebraSpec.from_entries(3, [(0, 1, 2, 1), (0, 2, 1, 1)])
    report = validate(spec)
    assert [v.kind for v in report.violations] == ["antisymmetry"]
    assert report.violations[0].where == (1, 2, 3)


def test_jacobi_violation():
    # [e1,e2] = e3, [e1,e3] = e1 breaks Jacobi on (e1, e2, e3)
    spec = LieAlgebraSpec.from_entries(3, [(2, 0, 1, 1), (0, 0, 2, 1)])
    report = validate(spec)
    assert any(v.kind == "jacobi" for v in report.violations)


@given(vec3, vec3, vec3)
def test_jacobi_holds_for_su2(x, y, z):
    su2 = preset("su2")
    total = (bracket(su2, x, bracket(su2, y, z)) + bracket(su2, y, bracket(su2, z, x))
             + bracket(su2, z, bracket(su2, x, y)))
    assert total == LieVector.zero(3)


@given(vec3, vec3)
def test_bracket_antisymmetric(x, y):
    su2 = preset("su2")
    assert bracket(su2, x, y) == bracket(su2, y, x).scale(-1)


def test_twist_apply_convention():
    spec = preset("abelian(2)").with_twist([[0, 1], [0, 0]])
    # Y^i = sum_j f_j^i X^j: f_1^2 = 1 sends e1 to e2
    assert twist_apply(spec, LieVector.basis(2, 0)) == LieVector.basis(2, 1)
    assert twist_apply(spec, LieVector.basis(2, 1)) == LieVector.zero(2)


def test_twisted_direction():
    spec = preset("abelian(1)").with_twist([[Fraction(1, 2)]])
    assert str(spec.twisted_direction(0)[0]) == "1+1/2*I"


def test_twist_equivariance():
    su2 = preset("su2")
    assert twist_equivariance_check(su2.with_twist([[2, 0, 0], [0, 2, 0], [0, 0, 2]])).ok
    assert not twist_equivariance_check(su2.with_twist([[1, 0, 0], [0, 0, 0], [0, 0, 0]])).ok
    # any twist commutes with the zero adjoint action
    assert twist_equivariance_check(preset("abelian(2)").with_twist([[0, 1], [5, 0]])).ok


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        bracket(preset("su2"), [1, 0], [0, 1, 0])
    with pytest.raises(ValueError):
        preset("su2").with_twist([[1]])


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("sl17")

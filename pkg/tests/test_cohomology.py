import pytest

from eqcartan.cohomology import (
    BettiTable,
    DegreeMatrix,
    ImageEscapesSubspace,
    NotAComplex,
    betti,
    check_complex,
    equivariant_cohomology,
    matrix_of,
    weil_cohomology,
)
from eqcartan.linalg import Subspace
from eqcartan.lie import preset
from eqcartan.scalars import Scalar
from eqcartan.weil import WeilAlgebra

from conftest import tensor_for


def test_weil_differential_matrix_abelian():
    w = WeilAlgebra(preset("abelian(1)"))
    dom = Subspace.full(w.alg.basis_of_degree(1))
    cod = Subspace.full(w.alg.basis_of_degree(2))
    m = matrix_of(w.d_W, dom, cod, 1)
    assert m.dense() == [[Scalar(1)]]
    assert m.rank() == 1


def test_empty_complex():
    table = betti([], 3)
    assert table.betti == []
    assert table.tsv() == "degree\tdim\tker\tim\tbetti\n"


def test_betti_rejects_non_complex():
    one = DegreeMatrix(0, 1, 1, {(0, 0): Scalar(1)})
    with pytest.raises(NotAComplex):
        betti([one, one], 2)


def test_image_escape_is_reported():
    t = tensor_for("abelian(1)", "point")
    full = {d: t.full(d) for d in range(3)}
    nothing = Subspace(full[2].monos, [], [])
    # D(theta) = phi has nowhere to go
    with pytest.raises(ImageEscapesSubspace):
        matrix_of(t.D, full[1], nothing)
    report = check_complex(t.D, {0: full[0], 1: full[1], 2: nothing}, 2, "D")
    assert not report.ok
    assert check_complex(t.D, full, 2, "D").ok


def test_tsv_layout():
    table = weil_cohomology(WeilAlgebra(preset("abelian(1)")), 3)
    assert isinstance(table, BettiTable)
    assert table.tsv().splitlines() == [
        "degree\tdim\tker\tim\tbetti",
        "0\t1\t1\t0\t1",
        "1\t1\t0\t0\t0",
        "2\t1\t1\t1\t0",
    ]


@pytest.mark.parametrize("model", ["weil", "cartan"])
def test_circle_on_a_point(model):
    t = tensor_for("abelian(1)", "point")
    assert equivariant_cohomology(t, 6, model).betti == [1, 0, 1, 0, 1, 0]


@pytest.mark.parametrize("model", ["weil", "cartan"])
def test_su2_on_a_point(model):
    t = tensor_for("su2", "point")
    assert equivariant_cohomology(t, 6, model).betti == [1, 0, 0, 0, 1, 0]


@pytest.mark.parametrize("model", ["weil", "cartan"])
def test_twisted_circle_on_the_plane(model):
    t = tensor_for("abelian(1)", "rotation", ((1,),))
    assert equivariant_cohomology(t, 5, model).betti == [1, 0, 1, 0, 1]


def test_unknown_model():
    with pytest.raises(ValueError):
        equivariant_cohomology(tensor_for("abelian(1)", "point"), 2, "other")

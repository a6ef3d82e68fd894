"""Acceptance criteria, one test each.

Every criterion also records a one-line verdict in ``RESULTS``; the pytest
terminal summary prints them, and running this file directly prints them too.
"""

import subprocess
import sys
from functools import lru_cache

import pytest

from eqcartan.brst import BrstModel, classical_delta, classical_psi
from eqcartan.cartan import CartanModel, classical_d_C
from eqcartan.cohomology import equivariant_cohomology, weil_cohomology
from eqcartan.lie import preset
from eqcartan.weil import WeilAlgebra, check_weil_identities

from conftest import ID3, tensor_for

RESULTS: dict = {}

# {abelian(1), su2} x {point, rotation forms (cap 6)} x {f = 0, f = identity}
MATRIX = [
    (name, module, twist)
    for name, ident in (("abelian(1)", ((1,),)), ("su2", ID3))
    for module in ("point", "rotation")
    for twist in (None, ident)
]


def _label(setup):
    name, module, twist = setup
    return f"{name}/{module}/{'f=0' if twist is None else 'f=id'}"


def record(number, ok, detail):
    RESULTS[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


@lru_cache(maxsize=None)
def criterion_1():
    bad = []
    for name in ("abelian(1)", "abelian(2)", "su2", "heisenberg3"):
        rep = check_weil_identities(WeilAlgebra(preset(name)), 6)
        if not rep.ok:
            bad.append(f"{name}: {len(rep)} violations")
    return record(1, not bad, "Weil identities, degree <= 6, four presets" + (f" [{'; '.join(bad)}]" if bad else ""))


@lru_cache(maxsize=None)
def criterion_2():
    tables = {name: weil_cohomology(WeilAlgebra(preset(name)), 6).betti[:5] for name in ("abelian(1)", "su2")}
    ok = all(b == [1, 0, 0, 0, 0] for b in tables.values())
    return record(2, ok, "Weil algebra acyclic: " + ", ".join(f"{k} {v}" for k, v in tables.items()))


@lru_cache(maxsize=None)
def criterion_3():
    bad = [_label(s) for s in MATRIX if not CartanModel(tensor_for(*s)).d_C_squared_defect(4).ok]
    return record(3, not bad, f"d_C^2 = -sum phi.Lie~ on {len(MATRIX)} setups, degree <= 4" + (f" [fails: {bad}]" if bad else ""))


@lru_cache(maxsize=None)
def criterion_4():
    square_bad, literal_bad, square_ok = [], [], []
    for s in MATRIX:
        b = BrstModel(tensor_for(*s))
        if not b.delta_squared_check(4).ok:
            square_bad.append(_label(s))
        rep = b.chain_map_check(4, literal=True)
        if not rep.ok:
            literal_bad.append(f"{_label(s)} ({len(rep)})")
        if b.chain_map_check(4).ok:
            square_ok.append(_label(s))
    mutant = BrstModel(tensor_for("su2", "rotation"), mutate="drop-ctt")
    caught = not (mutant.delta_squared_check(4).ok and mutant.chain_map_check(4, literal=True).ok)
    ok = not square_bad and not literal_bad and caught
    detail = (f"delta^2 = 0 fails on {square_bad or 'none'}; delta.psi = psi.D fails on {literal_bad or 'none'}; "
              f"mutation caught: {caught}; D.psi = psi.delta holds on {len(square_ok)}/{len(MATRIX)}")
    return record(4, ok, detail)


@lru_cache(maxsize=None)
def criterion_5():
    bad = [_label(s) for s in MATRIX if not BrstModel(tensor_for(*s)).psi_forms_agree(5).ok]
    return record(5, not bad, "psi factor swaps and exp(-T) agree, degree <= 5" + (f" [fails: {bad}]" if bad else ""))


CRIT6_SETUPS = [("abelian(1)", "rotation", ((1,),)), ("su2", "point", None), ("su2", "rotation", None),
                ("abelian(2)", "rotation", ((0, 1), (0, 0)))]


@lru_cache(maxsize=None)
def criterion_6():
    bad = []
    for s in CRIT6_SETUPS:
        t = tensor_for(*s)
        for label, rep in (("tensor", t.check_tensor_identities(5)), ("pairs", t.twisted_cartan_check(4)),
                           ("basic", t.check_basic_preserved(5))):
            if not rep.ok:
                bad.append(f"{_label(s)} {label}")
    return record(6, not bad, "tensor identities <= 5, all generator pairs, D keeps basic forms basic"
                  + (f" [fails: {bad}]" if bad else ""))


CRIT7_SETUPS = [("abelian(1)", "point", None), ("su2", "point", None), ("abelian(1)", "rotation", ((1,),))]


@lru_cache(maxsize=None)
def criterion_7():
    parts, ok = [], True
    for s in CRIT7_SETUPS:
        b = BrstModel(tensor_for(*s))
        images = b.cartan_to_basic_check(4)
        iso = b.isomorphism_check(4)
        ok &= images.ok and iso.ok
        parts.append(f"{_label(s)} {iso.dims_line()}")
    return record(7, ok, "invariant -> basic, dims inv/basic: " + "; ".join(parts))


@lru_cache(maxsize=None)
def criterion_8():
    circle = tensor_for("abelian(1)", "point")
    su2 = tensor_for("su2", "point")
    got = {
        "S1 cartan": equivariant_cohomology(circle, 5, "cartan").betti,
        "S1 weil": equivariant_cohomology(circle, 5, "weil").betti,
        "su2 cartan": equivariant_cohomology(su2, 6, "cartan").betti[:5],
        "su2 weil": equivariant_cohomology(su2, 6, "weil").betti[:5],
    }
    want = {"S1": [1, 0, 1, 0, 1], "su2": [1, 0, 0, 0, 1]}
    ok = all(v == want[k.split()[0]] for k, v in got.items())
    return record(8, ok, ", ".join(f"{k} {v}" for k, v in got.items()))


@lru_cache(maxsize=None)
def criterion_9():
    bad = []
    for s in (("abelian(1)", "rotation", None), ("su2", "rotation", None), ("su2", "point", None)):
        t = tensor_for(*s)
        c, b = CartanModel(t), BrstModel(t)
        refs = ((c.d_C, classical_d_C(t), True), (b.delta, classical_delta(t), False), (b.psi, classical_psi(t), False))
        for op, ref, theta_free in refs:
            for mono in t.alg.basis_up_to(4, theta_free=theta_free):
                if op.on_mono(mono) != ref.on_mono(mono):
                    bad.append(f"{_label(s)} {op.name}")
                    break
    return record(9, not bad, "f = 0: d_C, delta, psi match the classical operators, degree <= 4"
                  + (f" [fails: {bad}]" if bad else ""))


CLI_COMMANDS = [
    ["validate", "--preset", "su2", "--module", "rotation", "--degree", "3"],
    ["check", "all", "--preset", "abelian(1)", "--module", "rotation", "--twist", '[["1"]]', "--degree", "3"],
    ["cohomology", "--preset", "abelian(1)", "--degree", "5", "--model", "cartan"],
    ["cohomology", "--preset", "su2", "--degree", "6", "--model", "weil", "--tsv"],
    ["apply", "psi", "p1*[m:28]", "--preset", "abelian(1)", "--module", "rotation", "--twist", '[["1"]]'],
]


@lru_cache(maxsize=None)
def criterion_10():
    differ = []
    for argv in CLI_COMMANDS:
        runs = [subprocess.run([sys.executable, "-m", "eqcartan", *argv], capture_output=True, check=False)
                for _ in range(2)]
        if runs[0].stdout != runs[1].stdout or runs[0].stderr != runs[1].stderr or not runs[0].stdout:
            differ.append(argv[0])
    return record(10, not differ, f"{len(CLI_COMMANDS)} CLI commands byte-identical across two runs"
                  + (f" [differ: {differ}]" if differ else ""))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    assert CRITERIA[number - 1](), RESULTS[number]


if __name__ == "__main__":
    for fn in CRITERIA:
        fn()
        print(RESULTS[int(fn.__name__.split("_")[1])], flush=True)

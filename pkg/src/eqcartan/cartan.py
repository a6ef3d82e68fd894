"""The twisted Cartan model on S(g*) (x) A.

Elements are the theta-free part of the tensor algebra.  The differential is

    d_C = 1 (x) d - sum_i phi^i (x) iota_{u_i}

with ``u_i = e_i + I f(e_i)``; the ``plus`` sign convention flips the sign of
the contraction term.
"""

from __future__ import annotations

from .graded import Element, Operator, _acc_terms
from .lie import LieVector, twist_apply
from .report import ValidationReport
from .scalars import ONE, Scalar
from .weil import compare_operators
from .weilmodel import TensorAlgebra

__all__ = ["CartanModel", "ThetaInCartanInput", "INVARIANCE_MODES", "SIGN_CONVENTIONS"]

INVARIANCE_MODES = ("per_generator", "paper_literal")
SIGN_CONVENTIONS = ("minus", "plus")


class ThetaInCartanInput(ValueError):
    """A Cartan-model operation was handed an element containing theta."""


def _bump(phi: tuple, i: int) -> tuple:
    return phi[:i] + (phi[i] + 1,) + phi[i + 1:]


def _phi_times(n, ops, sign):
    """``sign * sum_i phi^i (x) ops[i]`` on theta-free monomials."""

    def fn(mono):
        theta, phi, m = mono
        out: dict = {}
        for i in range(n):
            r = ops[i].on_mono(mono)
            if r:
                _acc_terms(out, {(t, _bump(p, i), m2): c for (t, p, m2), c in r.items()},
                           None if sign > 0 else -ONE)
        return out

    return fn


class CartanModel:
    def __init__(self, tensor: TensorAlgebra, sign: str = "minus"):
        if sign not in SIGN_CONVENTIONS:
            raise ValueError(f"unknown sign convention {sign!r}; expected one of {SIGN_CONVENTIONS}")
        self.tensor = tensor
        self.alg = tensor.alg
        self.n = tensor.n
        self.sign = sign
        eps = -1 if sign == "minus" else 1
        self.eps = eps
        n = self.n
        contraction = Operator(1, _phi_times(n, tensor.mod_iota_tw, eps), "phi.iota~")
        mod_d = tensor.mod_d

        def d_c(mono):
            if mono[0]:
                raise ThetaInCartanInput(f"d_C is defined on theta-free elements, got {self.alg.format(Element.monomial(mono))}")
            out = dict(mod_d.on_mono(mono))
            _acc_terms(out, contraction.on_mono(mono))
            return out

        self.d_C = Operator(1, d_c, "d_C")
        # curvature of d_C: eps * sum phi^i (x) Lie_{u_i}
        self.curvature = Operator(2, _phi_times(n, tensor.mod_lie_tw, eps), "F_C")
        # the summed operator of the literal invariance condition
        self.summed_lie = Operator(2, _phi_times(n, tensor.mod_lie_tw, 1), "sum phi.Lie~")
        self._inv_cache: dict = {}

    # -- operations --------------------------------------------------------------

    def check_theta_free(self, x: Element):
        for theta, _, _ in x.terms:
            if theta:
                raise ThetaInCartanInput(f"element contains theta: {self.alg.format(x)}")

    def apply_d(self, x: Element) -> Element:
        self.check_theta_free(x)
        return self.d_C(x)

    def basis_up_to(self, top: int) -> list:
        return self.alg.basis_up_to(top, theta_free=True)

    def d_C_squared_defect(self, top: int) -> ValidationReport:
        """Compare ``d_C^2`` with the curvature operator on every theta-free monomial."""
        from .graded import compose

        report = ValidationReport("cartan-curvature")
        compare_operators(report, "d_C^2 = curvature", compose(self.d_C, self.d_C), self.curvature,
                          self.basis_up_to(top), self.alg)
        return report

    def invariance_operators(self, mode: str = "per_generator") -> list:
        t = self.tensor
        if mode == "per_generator":
            # L_k on the phi factor (coadjoint) plus the twisted Lie derivative on A
            return t.L_locked
        if mode == "paper_literal":
            return [self.summed_lie]
        raise ValueError(f"unknown invariance mode {mode!r}; expected one of {INVARIANCE_MODES}")

    def invariant_subspace(self, top: int, mode: str = "per_generator") -> dict:
        ops = self.invariance_operators(mode)
        out = {}
        for d in range(top + 1):
            key = (mode, d)
            if key not in self._inv_cache:
                self._inv_cache[key] = self.tensor.kernel(d, ops, theta_free=True)
            out[d] = self._inv_cache[key]
        return out

    def invariant_square_check(self, top: int, mode: str = "per_generator") -> ValidationReport:
        """``d_C^2 = 0`` on invariant basis vectors and ``d_C`` keeps them invariant."""
        report = ValidationReport(f"cartan-invariant[{mode}]")
        inv = self.invariant_subspace(top, mode)
        for d in range(top):
            for vec in inv[d].vectors:
                report.checked += 1
                once = self.d_C.apply_terms(vec)
                if self.d_C.apply_terms(once):
                    report.add("d_C^2 != 0 on invariant", f"degree {d}")
                if not inv[d + 1].contains(once):
                    report.add("d_C(invariant) not invariant", f"degree {d}")
        return report

    # -- evaluation ------------------------------------------------------------------

    def evaluate_at(self, x: Element, X) -> dict:
        """Substitute ``phi^i -> X^i``; the result is a module vector ``{m: c}``."""
        if len(X) != self.n:
            raise ValueError(f"dimension mismatch: expected {self.n} coefficients, got {len(X)}")
        self.check_theta_free(x)
        X = LieVector(X)
        out: dict = {}
        for (_, phi, m), c in x.terms.items():
            v = c
            for i, e in enumerate(phi):
                for _ in range(e):
                    v = v * X[i]
            if v:
                _acc_terms(out, {m: v})
        return out

    def evaluated_differential(self, X):
        """``d -/+ (iota_X + I iota_Y)`` on the module, ``Y = f(X)``: a map ``{m: c} -> {m: c}``."""
        X = LieVector(X)
        Y = twist_apply(self.tensor.spec, X)
        z = LieVector(a + Scalar(0, 1) * b for a, b in zip(X, Y))
        module = self.tensor.module
        iota = module.iota_vec(z)
        eps = self.eps

        def apply(vec: dict) -> dict:
            out: dict = {}
            for m, c in vec.items():
                _acc_terms(out, module.d(m), c)
                _acc_terms(out, iota(m), c if eps > 0 else -c)
            return out

        return apply


def classical_d_C(tensor: TensorAlgebra) -> Operator:
    """The untwisted Cartan differential ``1 (x) d - sum phi^i (x) iota_i``, written out directly."""
    module = tensor.module
    n = tensor.n

    def fn(mono):
        theta, phi, m = mono
        out: dict = {}
        for m2, c in module.d(m).items():
            _acc_terms(out, {(theta, phi, m2): c})
        for i in range(n):
            for m2, c in module.iota(i, m).items():
                _acc_terms(out, {(theta, _bump(phi, i), m2): -c})
        return out

    return Operator(1, fn, "d_C classical")

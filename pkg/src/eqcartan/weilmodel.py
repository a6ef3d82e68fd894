"""The Weil model: W(g) (x) A with D, the total contractions and Lie derivatives.

Notation used throughout:

* ``i_k``, ``L_k``      -- Weil-side operators (acting as ``P (x) 1``),
* ``iota_k``, ``Lie_k`` -- module operators (acting as Koszul-signed ``1 (x) Q``),
* ``u_k = e_k + I f(e_k)`` -- the twisted direction, so the twisted module
  contraction ``iota_k + I sum_j f_k^j iota_j`` is ``iota_{u_k}``.

``i_tilde[k] = i_k (x) 1 + 1 (x) iota_k`` and ``L_tilde[k]`` likewise; the
"locked" versions pair the Weil ``i_k`` with the twisted ``iota_{u_k}``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .gdga import GdgaInstance
from .graded import Algebra, Derivation, ModuleOperator, anticommutator
from .lie import LieAlgebraSpec, LieVector, twist_apply
from .linalg import NotInSpan, Subspace
from .report import ValidationReport
from .scalars import I
from .weil import WeilAlgebra, cartan_calculus_suite, compare_operators

__all__ = ["TensorAlgebra", "BASIC_MODES", "MODULE_KINDS", "build_tensor"]

BASIC_MODES = ("twisted_pairs", "all_pairs")


class TensorAlgebra:
    """W(g) (x) A together with every operator the three models need."""

    def __init__(self, weil: WeilAlgebra, module: GdgaInstance):
        if weil.n != module.n:
            raise ValueError("Weil algebra and module are built on different Lie algebras")
        self.weil = weil
        self.module = module
        self.spec: LieAlgebraSpec = weil.spec
        n = self.n = weil.n
        self.alg = Algebra(n, module)
        alg = self.alg
        self.u = [self.spec.twisted_direction(k) for k in range(n)]

        self.D = weil.d_W.with_module(module.d, "D", alg)
        self.weil_i = [weil.i[k].with_module(None, f"i{k + 1}x1", alg) for k in range(n)]
        self.weil_L = [weil.L[k].with_module(None, f"L{k + 1}x1", alg) for k in range(n)]
        self.mod_d = ModuleOperator(1, module.d, "1xd")
        self.mod_iota = [ModuleOperator(-1, module.iota_vec(LieVector.basis(n, k)), f"1xiota{k + 1}")
                         for k in range(n)]
        self.mod_lie = [ModuleOperator(0, module.lie_vec(LieVector.basis(n, k)), f"1xLie{k + 1}")
                        for k in range(n)]
        self.mod_iota_tw = [ModuleOperator(-1, module.iota_vec(self.u[k]), f"1xiota~{k + 1}") for k in range(n)]
        self.mod_lie_tw = [ModuleOperator(0, module.lie_vec(self.u[k]), f"1xLie~{k + 1}") for k in range(n)]
        self.i_tilde = [weil.i[k].with_module(module.iota_vec(LieVector.basis(n, k)), f"i~{k + 1}", alg)
                        for k in range(n)]
        self.L_tilde = [weil.L[k].with_module(module.lie_vec(LieVector.basis(n, k)), f"L~{k + 1}", alg)
                        for k in range(n)]
        self.i_locked = [weil.i[k].with_module(module.iota_vec(self.u[k]), f"i^f{k + 1}", alg) for k in range(n)]
        self.L_locked = [weil.L[k].with_module(module.lie_vec(self.u[k]), f"L^f{k + 1}", alg) for k in range(n)]
        self._basic_cache: dict = {}
        self._kernel_cache: dict = {}

    # -- twisted operators for arbitrary pairs ------------------------------------

    def i_tilde_twisted(self, x, y) -> Derivation:
        """``i_X (x) 1 + 1 (x) (iota_X + I iota_Y)``."""
        z = self._pair(x, y)
        return self.weil.contraction(LieVector(x)).with_module(self.module.iota_vec(z), "i~(X+IY)", self.alg)

    def L_tilde_twisted(self, x, y) -> Derivation:
        """``L_X (x) 1 + 1 (x) (Lie_X + I Lie_Y)``."""
        z = self._pair(x, y)
        return self.weil.lie_derivative_vec(LieVector(x)).with_module(self.module.lie_vec(z), "L~(X+IY)", self.alg)

    def _pair(self, x, y) -> LieVector:
        if len(x) != self.n or len(y) != self.n:
            raise ValueError(f"dimension mismatch: expected vectors of length {self.n}")
        x, y = LieVector(x), LieVector(y)
        return LieVector(a + I * b for a, b in zip(x, y))

    def locked_pair(self, x) -> tuple:
        """``(X, f(X))``: the pairing used by the f-locked operators."""
        x = LieVector(x)
        return x, twist_apply(self.spec, x)

    # -- bases and kernels ---------------------------------------------------------

    def basis_of_degree(self, d: int, theta_free: bool = False) -> list:
        return self.alg.basis_of_degree(d, theta_free)

    def blocks(self, d: int, theta_free: bool = False) -> dict:
        """Degree-``d`` basis split by module sector (every operator here preserves it)."""
        out: dict = {}
        for mono in self.alg.basis_of_degree(d, theta_free):
            out.setdefault(self.alg.sector(mono), []).append(mono)
        return dict(sorted(out.items()))

    def kernel(self, d: int, operators, theta_free: bool = False) -> Subspace:
        """Joint kernel of ``operators`` on the degree-``d`` part, block by block."""
        monos, vectors, pivots = [], [], []
        for block in self.blocks(d, theta_free).values():
            sub = Subspace.kernel(block, operators)
            monos.extend(block)
            vectors.extend(sub.vectors)
            pivots.extend(sub.pivots)
        return Subspace(monos, vectors, pivots)

    def full(self, d: int, theta_free: bool = False) -> Subspace:
        return Subspace.full(self.alg.basis_of_degree(d, theta_free))

    def basic_operators(self, mode: str = "twisted_pairs") -> list:
        if mode == "twisted_pairs":
            return self.i_locked + self.L_locked
        if mode == "all_pairs":
            return self.i_tilde + self.mod_iota + self.L_tilde + self.mod_lie
        raise ValueError(f"unknown basic mode {mode!r}; expected one of {BASIC_MODES}")

    def basic_subspace(self, top: int, mode: str = "twisted_pairs") -> dict:
        """Per-degree bases of the basic subcomplex, degrees ``0..top``."""
        ops = self.basic_operators(mode)
        out = {}
        for d in range(top + 1):
            key = (mode, d)
            if key not in self._basic_cache:
                self._basic_cache[key] = self.kernel(d, ops)
            out[d] = self._basic_cache[key]
        return out

    # -- identity checks -------------------------------------------------------------

    def check_tensor_identities(self, top: int) -> ValidationReport:
        monos = self.alg.basis_up_to(top)
        zero = LieVector.zero(self.n)
        return cartan_calculus_suite(
            f"tensor[{self.spec.name}]", self.spec, self.D, self.i_tilde, self.L_tilde,
            lambda v: self.i_tilde_twisted(v, zero), lambda v: self.L_tilde_twisted(v, zero), monos, self.alg)

    def twisted_cartan_check(self, top: int) -> ValidationReport:
        """``{D, i~_{X+IY}} = L~_{X+IY}`` for every basis pair and for the locked pairs."""
        report = ValidationReport("twisted-cartan")
        monos = self.alg.basis_up_to(top)
        n = self.n
        pairs = []
        for j in range(n):
            for k in range(n):
                pairs.append((f"(e{j + 1},e{k + 1})", LieVector.basis(n, j), LieVector.basis(n, k)))
        for j in range(n):
            x, y = self.locked_pair(LieVector.basis(n, j))
            pairs.append((f"(e{j + 1},f(e{j + 1}))", x, y))
        for label, x, y in pairs:
            lhs = anticommutator(self.D, self.i_tilde_twisted(x, y))
            compare_operators(report, f"{{D, i~}} = L~ at {label}", lhs, self.L_tilde_twisted(x, y), monos,
                              self.alg)
        return report

    def check_basic_preserved(self, top: int, mode: str = "twisted_pairs") -> ValidationReport:
        """D maps each basic basis vector of degree < top into the basic span."""
        report = ValidationReport(f"basic-preserved[{mode}]")
        basic = self.basic_subspace(top, mode)
        for d in range(top):
            target = basic[d + 1]
            for vec in basic[d].vectors:
                report.checked += 1
                image = self.D.apply_terms(vec)
                try:
                    target.coords(image)
                except NotInSpan as exc:
                    report.add("D(basic) not basic", f"degree {d}", str(exc))
        return report

    def basic_definition_check(self, top: int, samples: int | None = None, seed: int = 0) -> ValidationReport:
        """The all-pairs kernel equals the kernel of sampled ``i~_{X+IY}``, ``L~_{X+IY}``.

        The finite generator conditions imply the sampled ones by linearity;
        the converse needs enough generic samples, which the dimension
        comparison certifies.
        """
        report = ValidationReport("basic-definition")
        rng = random.Random(seed)
        count = samples if samples is not None else 2 * self.n + 2
        ops = []
        for _ in range(count):
            x = [Fraction(rng.randint(-3, 3)) for _ in range(self.n)]
            y = [Fraction(rng.randint(-3, 3)) for _ in range(self.n)]
            ops.append(self.i_tilde_twisted(x, y))
            ops.append(self.L_tilde_twisted(x, y))
        finite = self.basic_subspace(top, "all_pairs")
        for d in range(top + 1):
            sampled = self.kernel(d, ops)
            report.checked += 1
            for vec in finite[d].vectors:
                if not sampled.contains(vec):
                    report.add("generator kernel not in sampled kernel", f"degree {d}")
                    break
            for vec in sampled.vectors:
                if not finite[d].contains(vec):
                    report.add("sampled kernel not in generator kernel", f"degree {d}")
                    break
        return report


MODULE_KINDS = ("point", "rotation", "weil")


def build_tensor(spec: LieAlgebraSpec, module: str = "point", cap: int = 6, truncation: int | None = None,
                 weil_mutation: str | None = None) -> TensorAlgebra:
    """Assemble W(g) (x) A for one of the bundled modules."""
    from .gdga import make_point, make_polynomial_forms, make_weil_as_module, rotation_action

    weil = WeilAlgebra(spec, mutate=weil_mutation)
    if module == "point":
        mod = make_point(spec)
    elif module == "rotation":
        mod = make_polynomial_forms(rotation_action(spec, cap), spec, truncation)
    elif module == "weil":
        mod = make_weil_as_module(WeilAlgebra(spec))
    else:
        raise ValueError(f"unknown module {module!r}; expected one of {MODULE_KINDS}")
    return TensorAlgebra(weil, mod)

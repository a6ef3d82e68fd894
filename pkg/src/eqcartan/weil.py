"""The Weil algebra W(g) with contraction, differential and Lie derivative."""

from __future__ import annotations


from .graded import (
    Algebra,
    Derivation,
    Element,
    Operator,
    anticommutator,
    commutator,
    compose,
)
from .lie import LieAlgebraSpec, LieVector, bracket
from .report import ValidationReport

__all__ = ["WeilAlgebra", "check_weil_identities", "cartan_calculus_suite", "compare_operators",
           "WEIL_MUTATIONS"]

# drop-dw-phi: remove phi^i from d_W theta^i (still a g-dga, but not acyclic)
# flip-dw-phi: wrong sign on d_W phi^i (breaks {d_W, i_k} = L_k on phi)
WEIL_MUTATIONS = ("drop-dw-phi", "flip-dw-phi")


class WeilAlgebra:
    """W(g) = Lambda(g*) (x) S(g*) for a given Lie algebra.

    ``d_W``, ``i[k]`` and ``L[k]`` are :class:`Derivation` objects acting on
    the algebra with the point module, i.e. as ``P (x) 1`` on any tensor
    product.  ``L[k]`` is built from its closed-form generator images and
    checked against the anticommutator ``{d_W, i_k}`` on the generators.
    """

    def __init__(self, spec: LieAlgebraSpec, mutate: str | None = None):
        from .gdga import PointModule

        if mutate is not None and mutate not in WEIL_MUTATIONS:
            raise ValueError(f"unknown Weil mutation {mutate!r}")
        self.spec = spec
        self.mutate = mutate
        n = spec.n
        self.n = n
        self.alg = Algebra(n, PointModule(spec))
        alg = self.alg
        c = spec.c

        dtheta, dphi = [], []
        for i in range(n):
            # d_W theta^i = -1/2 sum_{j,k} c^i_{jk} theta^j theta^k + phi^i
            x = Element() if mutate == "drop-dw-phi" else alg.phi(i)
            for j in range(n):
                for k in range(j + 1, n):
                    if c(i, j, k):
                        x = x - alg.mul(alg.theta(j), alg.theta(k)).scale(c(i, j, k))
            dtheta.append(x)
            # d_W phi^i = -sum_{j,k} c^i_{jk} theta^j phi^k
            y = Element()
            for j in range(n):
                for k in range(n):
                    if c(i, j, k):
                        y = y - alg.mul(alg.theta(j), alg.phi(k)).scale(c(i, j, k))
            if mutate == "flip-dw-phi":
                y = -y
            dphi.append(y)
        self.d_W = Derivation(alg, 1, dtheta, dphi, name="d_W")
        self.i = [self.contraction(LieVector.basis(n, k)) for k in range(n)]
        self.L = [self._lie_closed_form(LieVector.basis(n, k)) for k in range(n)]
        if mutate is None:
            self._verify_lie_images()

    # -- operator builders -------------------------------------------------------

    def contraction(self, v) -> Derivation:
        """``i_v`` for ``v = sum v^k e_k``: theta^s -> v^s, phi -> 0."""
        alg = self.alg
        theta_images = [alg.scalar(v[s]) for s in range(self.n)]
        phi_images = [Element() for _ in range(self.n)]
        return Derivation(alg, -1, theta_images, phi_images, name="i")

    def _lie_closed_form(self, v) -> Derivation:
        # L_{e_i} theta^j = -sum_k c^j_{ik} theta^k, same shape on phi
        alg, n, c = self.alg, self.n, self.spec.c
        ti, pi = [], []
        for j in range(n):
            x, y = Element(), Element()
            for i in range(n):
                if not v[i]:
                    continue
                for k in range(n):
                    if c(j, i, k):
                        coef = -v[i] * c(j, i, k)
                        x = x + alg.theta(k).scale(coef)
                        y = y + alg.phi(k).scale(coef)
            ti.append(x)
            pi.append(y)
        return Derivation(alg, 0, ti, pi, name="L")

    def lie_derivative_vec(self, v) -> Derivation:
        return self._lie_closed_form(v)

    def _verify_lie_images(self):
        alg = self.alg
        for k in range(self.n):
            derived = anticommutator(self.d_W, self.i[k])
            for j in range(self.n):
                for gen in (alg.theta(j), alg.phi(j)):
                    if derived(gen) != self.L[k](gen):
                        raise AssertionError(
                            f"L_{k + 1} closed form disagrees with {{d_W, i_{k + 1}}} on {alg.format(gen)}")

    # -- functional API ----------------------------------------------------------

    def apply_d(self, x: Element) -> Element:
        return self.d_W(x)

    def contract(self, k: int, x: Element) -> Element:
        return self.i[k](x)

    def lie_derivative(self, k: int, x: Element) -> Element:
        return self.L[k](x)

    def basis_up_to(self, top: int) -> list:
        return self.alg.basis_up_to(top)

    def dimension(self, d: int) -> int:
        return len(self.alg.basis_of_degree(d))


# -- identity checking ---------------------------------------------------------------


def compare_operators(report: ValidationReport, label, lhs: Operator, rhs: Operator, monos, alg=None):
    """Record every monomial where ``lhs`` and ``rhs`` disagree."""
    for mono in monos:
        report.checked += 1
        a = lhs.on_mono(mono)
        b = rhs.on_mono(mono)
        if a != b:
            where = alg.format(Element.monomial(mono)) if alg is not None else mono
            report.add(label, where)


def cartan_calculus_suite(name, spec: LieAlgebraSpec, d, iota, lie, iota_of, lie_of, monos,
                          alg=None) -> ValidationReport:
    """The six identities of a g-differential algebra, for all basis pairs.

    ``d`` is the differential, ``iota[k]``/``lie[k]`` the basis operators and
    ``iota_of(v)``/``lie_of(v)`` build them for an arbitrary vector (used for
    the bracket right-hand sides).
    """
    from .graded import zero_operator

    report = ValidationReport(name)
    n = spec.n
    zero_odd = zero_operator(2)
    compare_operators(report, "d^2 = 0", compose(d, d), zero_odd, monos, alg)
    for a in range(n):
        compare_operators(report, f"[L{a + 1}, d] = 0", commutator(lie[a], d), zero_operator(1), monos, alg)
        compare_operators(report, f"{{d, i{a + 1}}} = L{a + 1}", anticommutator(d, iota[a]), lie[a], monos, alg)
        for b in range(n):
            ea, eb = LieVector.basis(n, a), LieVector.basis(n, b)
            br = bracket(spec, ea, eb)
            compare_operators(report, f"{{i{a + 1}, i{b + 1}}} = 0", anticommutator(iota[a], iota[b]),
                              zero_operator(-2), monos, alg)
            compare_operators(report, f"[L{a + 1}, i{b + 1}] = i[e{a + 1},e{b + 1}]",
                              commutator(lie[a], iota[b]), iota_of(br), monos, alg)
            compare_operators(report, f"[L{a + 1}, L{b + 1}] = L[e{a + 1},e{b + 1}]",
                              commutator(lie[a], lie[b]), lie_of(br), monos, alg)
    return report


def check_weil_identities(weil: WeilAlgebra, top: int) -> ValidationReport:
    """All six operator identities of W(g) on every basis monomial of degree <= top."""
    monos = weil.alg.basis_up_to(top)
    return cartan_calculus_suite(f"weil[{weil.spec.name}]", weil.spec, weil.d_W, weil.i, weil.L,
                                 weil.contraction, weil.lie_derivative_vec, monos, weil.alg)

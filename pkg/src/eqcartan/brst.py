"""The BRST operator and the map psi intertwining the three models.

With ``T = sum_k theta^k (x) iota_{u_k}`` (an even operator whose factors
square to zero and commute), ``psi = prod_k (1 - theta^k iota_{u_k}) =
exp(-T)``.  The BRST operator is the conjugate ``exp(T) D exp(-T)``; it is
built here a second time from its closed six-term form and the two are
compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .cartan import CartanModel
from .graded import (
    LeftMultiplication,
    Operator,
    _acc_terms,
    anticommutator,
    commutator,
    compose,
    identity_operator,
    sum_operators,
    zero_operator,
)
from .linalg import NotInSpan, SparseEchelon
from .report import ValidationReport
from .scalars import ONE, Scalar
from .weil import compare_operators
from .weilmodel import TensorAlgebra

__all__ = [
    "BrstModel",
    "RankReport",
    "DELTA_FORMS",
    "DELTA_MUTATIONS",
    "classical_delta",
    "classical_psi",
]

# resolved: last term -1/2 sum_{j<k} theta^j theta^k ([Lie~_j, iota~_k] - [Lie~_k, iota~_j])
# verbatim: last term -sum_{j<k} theta^j theta^k (Lie~_j iota~_k - iota~_j Lie~_k)
DELTA_FORMS = ("resolved", "verbatim")
DELTA_MUTATIONS = ("drop-ctt",)



class BrstModel:
    def __init__(self, tensor: TensorAlgebra, delta_form: str = "resolved", mutate: str | None = None):
        if delta_form not in DELTA_FORMS:
            raise ValueError(f"unknown delta form {delta_form!r}; expected one of {DELTA_FORMS}")
        if mutate is not None and mutate not in DELTA_MUTATIONS:
            raise ValueError(f"unknown delta mutation {mutate!r}; expected one of {DELTA_MUTATIONS}")
        self.tensor = tensor
        self.alg = tensor.alg
        self.n = tensor.n
        self.delta_form = delta_form
        self.mutate = mutate
        alg, n = self.alg, self.n
        self._theta_mul = [LeftMultiplication(alg, alg.theta(k), f"t{k + 1}") for k in range(n)]
        self._phi_mul = [LeftMultiplication(alg, alg.phi(k), f"p{k + 1}") for k in range(n)]
        self.T_k = [compose(self._theta_mul[k], tensor.mod_iota_tw[k]) for k in range(n)]
        self.T = sum_operators(self.T_k, 0)
        self.psi = self.psi_product()
        self.psi_inv = self.psi_product(inverse=True)
        self.delta = self.build_delta(delta_form, mutate)
        self.delta_conjugated = compose(self.psi_inv, compose(tensor.D, self.psi))

    # -- psi ---------------------------------------------------------------------

    def factor(self, k: int, inverse: bool = False) -> Operator:
        one = identity_operator()
        return one + self.T_k[k] if inverse else one - self.T_k[k]

    def psi_product(self, order=None, inverse: bool = False) -> Operator:
        """``prod_k (1 -/+ T_k)`` in the given factor order (leftmost factor applied last)."""
        order = list(range(self.n)) if order is None else list(order)
        if sorted(order) != list(range(self.n)):
            raise ValueError("factor order must be a permutation of the generators")
        op = identity_operator()
        for k in reversed(order):
            op = compose(self.factor(k, inverse), op)
        memo = Operator(0, op.on_mono, "psi^-1" if inverse else "psi")
        return memo

    def psi_exponential(self, terms: int | None = None) -> Operator:
        """``sum_{m <= terms} (-T)^m / m!`` (default: up to ``n``, where it terminates)."""
        top = self.n if terms is None else terms
        minus_t = -self.T
        total = identity_operator()
        power = identity_operator()
        for m in range(1, top + 1):
            power = compose(minus_t, power)
            total = total + Scalar(1) / factorial(m) * power
        return Operator(0, total.on_mono, "exp(-T)")

    # -- delta -----------------------------------------------------------------------

    def build_delta(self, form: str = "resolved", mutate: str | None = None) -> Operator:
        t = self.tensor
        n, alg, spec = self.n, self.alg, t.spec
        parts = [t.D]
        for i in range(n):
            parts.append(compose(self._theta_mul[i], t.mod_lie_tw[i]))
            parts.append(-compose(self._phi_mul[i], t.mod_iota_tw[i]))
        for j in range(n):
            for k in range(j + 1, n):
                tt = LeftMultiplication(alg, alg.mul(alg.theta(j), alg.theta(k)), f"t{j + 1}t{k + 1}")
                if mutate != "drop-ctt":
                    # 1/2 sum_{j,k} c^i_{jk} theta^j theta^k = sum_{j<k} c^i_{jk} theta^j theta^k
                    for i in range(n):
                        c = spec.c(i, j, k)
                        if c:
                            parts.append(Scalar(c) * compose(tt, t.mod_iota_tw[i]))
                lj, lk = t.mod_lie_tw[j], t.mod_lie_tw[k]
                ij, ik = t.mod_iota_tw[j], t.mod_iota_tw[k]
                if form == "verbatim":
                    inner = compose(lj, ik) - compose(ij, lk)
                else:
                    inner = Scalar(1, 0) / 2 * (commutator(lj, ik) - commutator(lk, ij))
                parts.append(-compose(tt, inner))
        total = sum_operators(parts, 1)
        return Operator(1, total.on_mono, f"delta[{form}]")

    # -- checks -----------------------------------------------------------------------

    def _monos(self, top):
        return self.alg.basis_up_to(top)

    def delta_squared_check(self, top: int) -> ValidationReport:
        report = ValidationReport("brst-square")
        compare_operators(report, "delta^2 = 0", compose(self.delta, self.delta), zero_operator(2),
                          self._monos(top), self.alg)
        return report

    def delta_conjugation_check(self, top: int) -> ValidationReport:
        """The closed form agrees with ``psi^-1 D psi``."""
        report = ValidationReport("brst-conjugation")
        compare_operators(report, "delta = psi^-1 D psi", self.delta, self.delta_conjugated,
                          self._monos(top), self.alg)
        return report

    def psi_forms_agree(self, top: int) -> ValidationReport:
        report = ValidationReport("psi-forms")
        monos = self._monos(top)
        base = self.psi
        order = list(range(self.n))
        for p in range(self.n - 1):
            swapped = order[:p] + [order[p + 1], order[p]] + order[p + 2:]
            compare_operators(report, f"psi with factors {p + 1},{p + 2} swapped",
                              self.psi_product(swapped), base, monos, self.alg)
        compare_operators(report, "exp(-T) = product", self.psi_exponential(), base, monos, self.alg)
        nil = identity_operator()
        for _ in range(self.n + 1):
            nil = compose(-self.T, nil)
        compare_operators(report, f"(-T)^{self.n + 1} = 0", nil, zero_operator(0), monos, self.alg)
        compare_operators(report, "psi^-1 psi = 1", compose(self.psi_inv, self.psi), identity_operator(),
                          monos, self.alg)
        compare_operators(report, "psi psi^-1 = 1", compose(self.psi, self.psi_inv), identity_operator(),
                          monos, self.alg)
        return report

    def chain_map_check(self, top: int, literal: bool = False) -> ValidationReport:
        """The commuting square ``D o psi = psi o delta``.

        ``literal=True`` tests the reversed equation ``delta o psi = psi o D``
        instead, which holds only where the two differentials coincide.
        """
        monos = self._monos(top)
        if literal:
            report = ValidationReport("psi-chain-map[reversed]")
            compare_operators(report, "delta psi = psi D", compose(self.delta, self.psi),
                              compose(self.psi, self.tensor.D), monos, self.alg)
        else:
            report = ValidationReport("psi-chain-map")
            compare_operators(report, "D psi = psi delta", compose(self.tensor.D, self.psi),
                              compose(self.psi, self.delta), monos, self.alg)
        return report

    def cartan_to_basic_check(self, top: int, mode: str = "per_generator", sign: str = "minus") -> ValidationReport:
        """psi carries invariant Cartan forms to basic forms and d_C to D.

        Also verifies the two operator identities behind it on every monomial
        of degree <= top: ``psi i_k psi^-1 = i_k + iota_{u_k}`` and
        ``{delta, i_k (x) 1} = L_k (x) 1 + 1 (x) Lie_{u_k}``.
        """
        t = self.tensor
        report = ValidationReport(f"cartan-to-basic[{mode}]")
        cartan = CartanModel(t, sign)
        inv = cartan.invariant_subspace(top, mode)
        for d in range(top + 1):
            for vec in inv[d].vectors:
                report.checked += 1
                image = self.psi.apply_terms(vec)
                for k in range(self.n):
                    if t.i_locked[k].apply_terms(image):
                        report.add(f"i^f{k + 1} psi(alpha) != 0", f"degree {d}")
                    if t.L_locked[k].apply_terms(image):
                        report.add(f"L^f{k + 1} psi(alpha) != 0", f"degree {d}")
                if d < top:
                    lhs = t.D.apply_terms(image)
                    rhs = self.psi.apply_terms(cartan.d_C.apply_terms(vec))
                    if lhs != rhs:
                        report.add("D psi(alpha) != psi d_C(alpha)", f"degree {d}")
        monos = self._monos(top)
        for k in range(self.n):
            conj = compose(self.psi, compose(t.weil_i[k], self.psi_inv))
            compare_operators(report, f"psi i{k + 1} psi^-1 = i^f{k + 1}", conj, t.i_locked[k], monos, self.alg)
            compare_operators(report, f"{{delta, i{k + 1}}} = L^f{k + 1}", anticommutator(self.delta, t.weil_i[k]),
                              t.L_locked[k], monos, self.alg)
        return report

    def isomorphism_check(self, top: int, mode: str = "per_generator", sign: str = "minus") -> "RankReport":
        """Per-degree rank certificate that psi is an isomorphism between the subspaces."""
        t = self.tensor
        cartan = CartanModel(t, sign)
        inv = cartan.invariant_subspace(top, mode)
        basic = t.basic_subspace(top, "twisted_pairs")
        report = ValidationReport(f"cartan-basic-iso[{mode}]")
        rows = []
        for d in range(top + 1):
            ech = SparseEchelon()
            for vec in inv[d].vectors:
                report.checked += 1
                try:
                    ech.add(dict(enumerate(basic[d].coords(self.psi.apply_terms(vec)))))
                except NotInSpan:
                    report.add("psi(invariant) not basic", f"degree {d}")
            for vec in basic[d].vectors:
                report.checked += 1
                back = self.psi_inv.apply_terms(vec)
                if any(theta for theta, _, _ in back):
                    report.add("psi^-1(basic) has theta", f"degree {d}")
                elif not inv[d].contains(back):
                    report.add("psi^-1(basic) not invariant", f"degree {d}")
            row = (d, inv[d].dim, basic[d].dim, ech.rank)
            if not row[1] == row[2] == row[3]:
                report.add("dimension mismatch", f"degree {d}", f"invariant {row[1]}, basic {row[2]}, rank {row[3]}")
            rows.append(row)
        return RankReport(rows, report)


@dataclass
class RankReport:
    """Rows ``(degree, dim invariant, dim basic, rank of psi between them)``."""

    rows: list
    report: ValidationReport = field(default_factory=lambda: ValidationReport("rank"))

    @property
    def ok(self) -> bool:
        return self.report.ok

    def dims_line(self) -> str:
        return " ".join(f"{d}:{a}/{b}" for d, a, b, _ in self.rows)

    def summary(self) -> str:
        return self.report.summary()


# -- the untwisted operators, written out independently --------------------------------


def classical_delta(tensor: TensorAlgebra) -> Operator:
    """``D + sum theta^i (x) Lie_i - sum phi^i (x) iota_i`` built from the raw module maps."""
    alg, module, n = tensor.alg, tensor.module, tensor.n
    D = tensor.D

    def fn(mono):
        theta, phi, m = mono
        out = dict(D.on_mono(mono))
        sgn = -1 if len(theta) & 1 else 1
        for i in range(n):
            lie = module.lie_derivative(i, m)
            if lie:
                prod = alg.mono_mul(((i,), alg.zero_phi, module.unit), (theta, phi, module.unit))
                for (t2, p2, _), c in prod.items():
                    _acc_terms(out, {(t2, p2, m2): v * c for m2, v in lie.items()})
            iota = module.iota(i, m)
            if iota:
                p2 = phi[:i] + (phi[i] + 1,) + phi[i + 1:]
                _acc_terms(out, {(theta, p2, m2): (-v if sgn > 0 else v) for m2, v in iota.items()})
        return out

    return Operator(1, fn, "delta classical")


def classical_psi(tensor: TensorAlgebra) -> Operator:
    """``exp(-sum theta^i (x) iota_i)`` expanded as a series from the raw module maps."""
    alg, module, n = tensor.alg, tensor.module, tensor.n

    def t_op(mono):
        theta, phi, m = mono
        out: dict = {}
        sgn = -1 if len(theta) & 1 else 1
        for i in range(n):
            r = module.iota(i, m)
            if not r:
                continue
            prod = alg.mono_mul(((i,), alg.zero_phi, module.unit), (theta, phi, module.unit))
            for (t2, p2, _), c in prod.items():
                _acc_terms(out, {(t2, p2, m2): v * c * sgn for m2, v in r.items()})
        return out

    def fn(mono):
        out = {mono: ONE}
        term = {mono: ONE}
        for m in range(1, n + 1):
            nxt: dict = {}
            for k, c in term.items():
                _acc_terms(nxt, t_op(k), c * Scalar(-1, 0) / m)
            term = nxt
            if not term:
                break
            _acc_terms(out, term)
        return out

    return Operator(0, fn, "psi classical")

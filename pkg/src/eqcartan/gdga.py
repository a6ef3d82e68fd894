"""Finite g-differential algebras standing in for the forms on a G-manifold.

Every instance exposes its graded basis through integer indices (``0`` is
the unit) and gives ``d``, the contractions ``iota_k`` and the Lie
derivatives ``L_k`` as maps ``index -> {index: Scalar}``.

Polynomial forms on R^m are truncated by *weight*: ``x^a dx_J`` has weight
``|a| + |J|``.  The differential, the contractions of a linear action and
hence the Lie derivatives all preserve weight, and the span of weight
``> cap`` is an ideal, so the truncated algebra is an honest quotient
g-dga and every operator identity holds exactly on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graded import Algebra, Element, ModuleOperator, merge_theta
from .lie import LieAlgebraSpec
from .report import ValidationReport
from .scalars import ONE, Scalar

__all__ = [
    "GdgaInstance",
    "PointModule",
    "PolynomialForms",
    "WeilModule",
    "LinearActionSpec",
    "make_point",
    "make_polynomial_forms",
    "make_weil_as_module",
    "rotation_action",
    "check_gdga",
    "HomomorphismError",
]


class HomomorphismError(ValueError):
    """The matrices of a linear action do not represent the Lie algebra."""


class GdgaInstance:
    """Base class: caching and the twisted-direction helpers."""

    unit = 0
    provenance = "abstract"

    def __init__(self, lie: LieAlgebraSpec):
        self.lie = lie
        self.n = lie.n
        self._d: dict = {}
        self._iota: dict = {}
        self._lie: dict = {}
        self._vec_cache: dict = {}

    # subclasses implement _d_raw, _iota_raw, _lie_raw, degree, basis, mul,
    # has_index, sector

    def d(self, m: int) -> dict:
        r = self._d.get(m)
        if r is None:
            r = self._d[m] = self._d_raw(m)
        return r

    def iota(self, k: int, m: int) -> dict:
        key = (k, m)
        r = self._iota.get(key)
        if r is None:
            r = self._iota[key] = self._iota_raw(k, m)
        return r

    def lie_derivative(self, k: int, m: int) -> dict:
        key = (k, m)
        r = self._lie.get(key)
        if r is None:
            r = self._lie[key] = self._lie_raw(k, m)
        return r

    def _lie_raw(self, k, m):
        # L_k = d iota_k + iota_k d
        out: dict = {}
        for m2, c in self.iota(k, m).items():
            _add_into(out, self.d(m2), c)
        for m2, c in self.d(m).items():
            _add_into(out, self.iota(k, m2), c)
        return out

    def iota_vec(self, v) -> "callable":
        """The contraction along a (complex) vector ``v = sum v^k e_k``."""
        return self._combo("iota", tuple(v))

    def lie_vec(self, v) -> "callable":
        return self._combo("lie", tuple(v))

    def _combo(self, kind, v):
        key = (kind, v)
        fn = self._vec_cache.get(key)
        if fn is not None:
            return fn
        base = self.iota if kind == "iota" else self.lie_derivative
        coeffs = [(k, c) for k, c in enumerate(v) if c]
        memo: dict = {}

        def fn(m):
            r = memo.get(m)
            if r is None:
                r = {}
                for k, c in coeffs:
                    _add_into(r, base(k, m), c)
                memo[m] = r
            return r

        self._vec_cache[key] = fn
        return fn

    def basis_up_to(self, top: int) -> list:
        out = []
        for d in range(top + 1):
            out.extend(self.basis(d))
        return out

    def label(self, m: int) -> str:
        return f"[m:{m}]"


def _add_into(out: dict, terms: dict, c=ONE):
    for k, v in terms.items():
        s = out.get(k)
        s = v * c if s is None else s + v * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)


# -- the point ---------------------------------------------------------------


class PointModule(GdgaInstance):
    """Forms on a point: one basis element, all operators zero."""

    provenance = "point"

    def __init__(self, lie: LieAlgebraSpec):
        super().__init__(lie)
        self.max_degree = 0

    def degree(self, m):
        return 0

    def sector(self, m):
        return 0

    def has_index(self, m):
        return m == 0

    def basis(self, deg):
        return [0] if deg == 0 else []

    def mul(self, a, b):
        return {0: ONE}

    def _d_raw(self, m):
        return {}

    def _iota_raw(self, k, m):
        return {}

    def _lie_raw(self, k, m):
        return {}

    def label(self, m):
        return "1"


def make_point(lie: LieAlgebraSpec) -> PointModule:
    return PointModule(lie)


# -- polynomial forms on R^m ---------------------------------------------------


@dataclass(frozen=True)
class LinearActionSpec:
    """``rho[k]`` is the m x m matrix of ``e_k`` acting on R^m."""

    m: int
    rho: tuple
    poly_degree_cap: int

    def __post_init__(self):
        rho = tuple(tuple(tuple(Fraction(x) for x in row) for row in mat) for mat in self.rho)
        for mat in rho:
            if len(mat) != self.m or any(len(row) != self.m for row in mat):
                raise ValueError(f"representation matrices must be {self.m}x{self.m}")
        object.__setattr__(self, "rho", rho)

    def homomorphism_defects(self, lie: LieAlgebraSpec) -> list:
        """Entries where rho([e_j, e_k]) != [rho(e_j), rho(e_k)]."""
        if len(self.rho) != lie.n:
            raise ValueError(f"need {lie.n} representation matrices, got {len(self.rho)}")
        m = self.m
        bad = []
        for j in range(lie.n):
            for k in range(j + 1, lie.n):
                A, B = self.rho[j], self.rho[k]
                for a in range(m):
                    for b in range(m):
                        comm = sum(A[a][t] * B[t][b] - B[a][t] * A[t][b] for t in range(m))
                        lhs = sum(lie.c(i, j, k) * self.rho[i][a][b] for i in range(lie.n))
                        if lhs != comm:
                            bad.append((j, k, a, b, lhs - comm))
        return bad


def rotation_action(lie: LieAlgebraSpec, cap: int = 6) -> LinearActionSpec:
    """The rotation module used throughout the tests.

    ``abelian(n)`` rotates the n coordinate planes of R^(2n), generator k
    acting by [[0, -1], [1, 0]] on plane k.  A non-abelian algebra acts on
    R^n by its adjoint representation (for su2 this is the so(3) rotation
    action on R^3).
    """
    if lie.is_abelian:
        m = 2 * lie.n
        mats = []
        for k in range(lie.n):
            mat = [[0] * m for _ in range(m)]
            mat[2 * k][2 * k + 1] = -1
            mat[2 * k + 1][2 * k] = 1
            mats.append(mat)
        return LinearActionSpec(m, tuple(mats), cap)
    n = lie.n
    rho = tuple(tuple(tuple(lie.c(a, k, b) for b in range(n)) for a in range(n)) for k in range(n))
    return LinearActionSpec(n, rho, cap)


class PolynomialForms(GdgaInstance):
    """Polynomial differential forms on R^m, weight-truncated at ``cap``.

    Basis element ``(a, J)`` is ``x^a dx_J``.  The vector field of ``e_k``
    is ``X_k = -sum_{a,b} rho_k[a][b] x_b d/dx_a`` (flow ``exp(-t e_k)``),
    so ``iota_k dx_a = -sum_b rho_k[a][b] x_b``.
    """

    provenance = "polynomial_forms"

    def __init__(self, action: LinearActionSpec, lie: LieAlgebraSpec, check: bool = True):
        super().__init__(lie)
        if action.poly_degree_cap < 0:
            raise ValueError("polynomial cap must be non-negative")
        if len(action.rho) != lie.n:
            raise ValueError(f"need {lie.n} representation matrices, got {len(action.rho)}")
        if check:
            bad = action.homomorphism_defects(lie)
            if bad:
                j, k, a, b, r = bad[0]
                raise HomomorphismError(
                    f"rho is not a Lie algebra homomorphism: entry ({a + 1},{b + 1}) of "
                    f"rho([e_{j + 1},e_{k + 1}]) - [rho(e_{j + 1}),rho(e_{k + 1})] is {r}")
        self.action = action
        self.m = action.m
        self.cap = action.poly_degree_cap
        self.max_degree = min(self.m, self.cap)
        self._keys: list = []
        self._index: dict = {}
        self._by_degree: dict = {}
        for deg in range(self.max_degree + 1):
            ids = []
            for J in combinations(range(self.m), deg):
                for total in range(self.cap - deg + 1):
                    for a in _exponents(self.m, total):
                        self._index[(a, J)] = len(self._keys)
                        ids.append(len(self._keys))
                        self._keys.append((a, J))
            self._by_degree[deg] = ids
        # iota_k(dx_a) = -sum_b rho_k[a][b] x_b
        self._iota_dx = [
            [[(b, -mat[a][b]) for b in range(self.m) if mat[a][b]] for a in range(self.m)]
            for mat in action.rho
        ]

    def key(self, m):
        return self._keys[m]

    def index(self, a, J):
        return self._index.get((tuple(a), tuple(J)))

    def degree(self, m):
        return len(self._keys[m][1])

    def weight(self, m):
        a, J = self._keys[m]
        return sum(a) + len(J)

    sector = weight

    def has_index(self, m):
        return 0 <= m < len(self._keys)

    def basis(self, deg):
        return list(self._by_degree.get(deg, []))

    def __len__(self):
        return len(self._keys)

    def mul(self, i, j):
        a, J = self._keys[i]
        b, K = self._keys[j]
        sign, L = merge_theta(J, K)
        if not sign:
            return {}
        idx = self._index.get((tuple(x + y for x, y in zip(a, b)), L))
        if idx is None:
            return {}
        return {idx: ONE if sign > 0 else -ONE}

    def _d_raw(self, i):
        a, J = self._keys[i]
        out = {}
        for t in range(self.m):
            if not a[t] or t in J:
                continue
            sign, L = merge_theta((t,), J)
            a2 = list(a)
            a2[t] -= 1
            idx = self._index[(tuple(a2), L)]
            out[idx] = Scalar(sign * a[t])
        return out

    def _iota_raw(self, k, i):
        a, J = self._keys[i]
        out: dict = {}
        for s, t in enumerate(J):
            rest = J[:s] + J[s + 1:]
            sign = -1 if s & 1 else 1
            for b, coef in self._iota_dx[k][t]:
                a2 = list(a)
                a2[b] += 1
                idx = self._index[(tuple(a2), rest)]
                _add_into(out, {idx: Scalar(coef * sign)})
        return out

    def label(self, m):
        a, J = self._keys[m]
        parts = []
        for t, e in enumerate(a):
            if e == 1:
                parts.append(f"x{t + 1}")
            elif e:
                parts.append(f"x{t + 1}^{e}")
        parts += [f"dx{t + 1}" for t in J]
        return "*".join(parts) or "1"


def _exponents(m, total):
    """Exponent vectors of length m and given total, x1-heavy first."""
    if m == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exponents(m - 1, total - first):
            yield (first,) + rest


def make_polynomial_forms(action: LinearActionSpec, lie: LieAlgebraSpec, truncation: int | None = None,
                          check: bool = True) -> PolynomialForms:
    """Polynomial forms for a linear action; ``cap >= truncation`` is enforced."""
    if action.poly_degree_cap < 0:
        raise ValueError("polynomial cap must be non-negative")
    if truncation is not None and action.poly_degree_cap < truncation:
        raise ValueError(f"polynomial cap {action.poly_degree_cap} is below the truncation degree {truncation}")
    return PolynomialForms(action, lie, check=check)


# -- W(g) as a module ------------------------------------------------------------


class WeilModule(GdgaInstance):
    """W(g) itself as the module factor, with (d, iota, L) = (d_W, i, L).

    Basis indices are assigned lazily in canonical order, degree by degree.
    """

    provenance = "weil"

    def __init__(self, weil):
        super().__init__(weil.spec)
        self.weil = weil
        self.max_degree = None
        self._keys: list = []
        self._index: dict = {}
        self._by_degree: dict = {}
        self._top = -1
        self._ensure(0)

    def _ensure(self, deg):
        alg = self.weil.alg
        while self._top < deg:
            self._top += 1
            ids = []
            for w in alg.weil_monomials(self._top):
                self._index[w] = len(self._keys)
                ids.append(len(self._keys))
                self._keys.append(w)
            self._by_degree[self._top] = ids

    def index_of(self, w):
        idx = self._index.get(w)
        if idx is None:
            self._ensure(len(w[0]) + 2 * sum(w[1]))
            idx = self._index[w]
        return idx

    def key(self, m):
        return self._keys[m]

    def degree(self, m):
        t, p = self._keys[m]
        return len(t) + 2 * sum(p)

    def sector(self, m):
        return 0

    def has_index(self, m):
        return 0 <= m < len(self._keys)

    def basis(self, deg):
        self._ensure(deg)
        return list(self._by_degree[deg])

    def mul(self, i, j):
        alg = self.weil.alg
        ta, pa = self._keys[i]
        tb, pb = self._keys[j]
        prod = alg.mono_mul((ta, pa, 0), (tb, pb, 0))
        return {self.index_of((t, p)): c for (t, p, _), c in prod.items()}

    def _convert(self, terms):
        return {self.index_of((t, p)): c for (t, p, _), c in terms.items()}

    def _d_raw(self, m):
        t, p = self._keys[m]
        return self._convert(self.weil.d_W.on_mono((t, p, 0)))

    def _iota_raw(self, k, m):
        t, p = self._keys[m]
        return self._convert(self.weil.i[k].on_mono((t, p, 0)))

    def _lie_raw(self, k, m):
        t, p = self._keys[m]
        return self._convert(self.weil.L[k].on_mono((t, p, 0)))

    def label(self, m):
        t, p = self._keys[m]
        return self.weil.alg.format(Element.monomial((t, p, 0)))


def make_weil_as_module(weil) -> WeilModule:
    return WeilModule(weil)


# -- the Cartan-calculus check ---------------------------------------------------


def module_operators(module: GdgaInstance, alg: Algebra | None = None):
    """Wrap the module's d, iota, L as operators on ``W(g) (x) A``."""
    if alg is None:
        alg = Algebra(module.n, module)
    d = ModuleOperator(1, module.d, "d")
    iota = [ModuleOperator(-1, (lambda m, k=k: module.iota(k, m)), f"iota{k + 1}") for k in range(module.n)]
    lie = [ModuleOperator(0, (lambda m, k=k: module.lie_derivative(k, m)), f"L{k + 1}") for k in range(module.n)]
    return alg, d, iota, lie


def check_gdga(module: GdgaInstance, top: int) -> ValidationReport:
    """Verify the Cartan calculus on every module basis element of degree <= top."""
    from .weil import cartan_calculus_suite

    alg, d, iota, lie = module_operators(module)

    def iota_of(v):
        return ModuleOperator(-1, module.iota_vec(v), "iota_v")

    def lie_of(v):
        return ModuleOperator(0, module.lie_vec(v), "L_v")

    monos = [((), alg.zero_phi, m) for m in module.basis_up_to(top)]
    report = cartan_calculus_suite(f"gdga[{module.provenance}]", module.lie, d, iota, lie, iota_of, lie_of, monos)
    return report

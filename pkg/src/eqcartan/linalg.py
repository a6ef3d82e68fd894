"""Exact linear algebra over Q(i).

Rows are sparse dicts ``column -> Scalar``.  Pivot rows are stored monic
(leading entry 1), so reducing a row is ``r <- r - r[c]*R`` and entry
sizes stay bounded by the minors of the input; plain fraction-free
reduction without Bareiss division grows exponentially on dense input.
Dense Bareiss elimination and a naive rational elimination are provided
for cross-checking.
"""

from __future__ import annotations

from math import gcd

from .scalars import ONE, ZERO, as_scalar

__all__ = [
    "SparseEchelon",
    "nullspace",
    "rank",
    "rank_bareiss",
    "rank_naive",
    "Subspace",
    "NotInSpan",
]


class NotInSpan(ValueError):
    """A vector that should lie in a subspace does not."""


# -- Gaussian integers as (re, im) int pairs ---------------------------------------


def _gi_row(row: dict) -> dict:
    """Scale a Scalar row to Gaussian integers with trivial integer content."""
    den = 1
    for v in row.values():
        q = v.gaussian_parts()[2]
        den = den * q // gcd(den, q)
    out = {}
    for c, v in row.items():
        a, b, q = v.gaussian_parts()
        f = den // q
        out[c] = (a * f, b * f)
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for a, b in row.values():
        g = gcd(g, a, b)
        if g == 1:
            return row
    if g > 1:
        return {c: (a // g, b // g) for c, (a, b) in row.items()}
    return row


class SparseEchelon:
    """Incremental row echelon form; ``add`` reports whether a row was independent.

    ``pivots[c]`` is a monic row whose leading column is ``c``.
    """

    def __init__(self):
        self.pivots: dict = {}

    def add(self, row: dict) -> bool:
        r = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                inv = r[col].inv()
                r = {c: v * inv for c, v in r.items()}
                r[col] = ONE
                pivots[col] = r
                return True
            f = r[col]
            for c, v in piv.items():
                s = r.get(c)
                t = s - f * v if s is not None else -(f * v)
                if t:
                    r[c] = t
                else:
                    r.pop(c, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def pivot_columns(self) -> list:
        return sorted(self.pivots)


def rank(rows) -> int:
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, ncols: int) -> list:
    return _nullspace(rows, ncols)[1]


def _nullspace(rows, ncols: int):
    """Free columns and the canonical basis of ``{x : row . x = 0 for all rows}``.

    Column indices run over ``range(ncols)``.  The vector attached to free
    column ``f`` has a 1 at ``f`` and 0 at every other free column, so the
    basis does not depend on the elimination order.
    """
    rows = [r for r in rows if any(r.values())]
    chosen = _independent_mod_p(rows, ncols)
    if chosen is not None:
        free, basis = _solve(chosen, ncols)
        if all(_annihilates(r, v) for r in rows for v in basis):
            return free, basis
    return _solve(rows, ncols)


# A prime p = 1 (mod 4), so I has an image in Z/p.
_P = 1_000_000_009
_SQRT_M1 = next(r for r in (pow(g, (_P - 1) // 4, _P) for g in range(2, 50)) if r * r % _P == _P - 1)


def _independent_mod_p(rows, ncols):
    """Rows that stay independent after reduction mod p, or None if some denominator vanishes.

    Independence mod p implies independence over Q(i), so the kernel of the
    chosen rows contains the true kernel; the caller certifies equality by
    checking every basis vector against all rows.
    """
    pivots: dict = {}
    chosen = []
    for row in rows:
        r = {}
        for c, v in row.items():
            a, b, q = v.gaussian_parts()
            if q % _P == 0:
                return None
            x = (a + b * _SQRT_M1) * pow(q, -1, _P) % _P
            if x:
                r[c] = x
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(r[col], -1, _P)
                pivots[col] = {c: v * inv % _P for c, v in r.items()}
                chosen.append(row)
                break
            f = r[col]
            for c, v in piv.items():
                t = (r.get(c, 0) - f * v) % _P
                if t:
                    r[c] = t
                else:
                    r.pop(c, None)
        if len(pivots) == ncols:
            break
    return chosen


def _annihilates(row: dict, vec: dict) -> bool:
    total = ZERO
    for c, v in row.items():
        x = vec.get(c)
        if x is not None:
            total = total + v * x
    return not total


def _solve(rows, ncols: int):
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
        if ech.rank == ncols:
            break
    pivots = ech.pivots
    free = [c for c in range(ncols) if c not in pivots]
    # back substitution, all free columns at once: X[c] maps free col -> value
    X: dict = {}
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        acc: dict = {}
        for j, coef in row.items():
            if j == c:
                continue
            if j in pivots:
                for f, v in X[j].items():
                    s = acc.get(f)
                    t = coef * v
                    acc[f] = t if s is None else s + t
            else:
                s = acc.get(j)
                acc[j] = coef if s is None else s + coef
        X[c] = {f: -v for f, v in acc.items() if v}
    basis = []
    for f in free:
        vec = {f: ONE}
        for c, xs in X.items():
            v = xs.get(f)
            if v:
                vec[c] = v
        basis.append(vec)
    return free, basis


# -- dense routines used as cross-checks -------------------------------------------------


def _gi_divexact(x, p):
    """Exact division of Gaussian integers x / p (asserted exact)."""
    a, b = x
    c, d = p
    n = c * c + d * d
    re_, im_ = a * c + b * d, b * c - a * d
    if re_ % n or im_ % n:
        raise ArithmeticError("inexact Gaussian integer division")
    return (re_ // n, im_ // n)


def rank_bareiss(matrix) -> int:
    """Rank by Bareiss fraction-free elimination on a dense matrix of scalars."""
    rows = [_gi_row({j: as_scalar(v) for j, v in enumerate(r) if as_scalar(v)}) for r in matrix]
    if not rows:
        return 0
    ncols = max((len(r) for r in matrix), default=0)
    M = [[row.get(j, (0, 0)) for j in range(ncols)] for row in rows]
    m = len(M)
    prev = (1, 0)
    r = 0
    for col in range(ncols):
        if r == m:
            break
        sel = next((i for i in range(r, m) if M[i][col] != (0, 0)), None)
        if sel is None:
            continue
        M[r], M[sel] = M[sel], M[r]
        p = M[r][col]
        for i in range(r + 1, m):
            a = M[i][col]
            newrow = []
            for j in range(ncols):
                x, y = M[i][j], M[r][j]
                # (p*x - a*y) / prev
                u = (p[0] * x[0] - p[1] * x[1] - (a[0] * y[0] - a[1] * y[1]),
                     p[0] * x[1] + p[1] * x[0] - (a[0] * y[1] + a[1] * y[0]))
                newrow.append(_gi_divexact(u, prev))
            M[i] = newrow
        prev = p
        r += 1
    return r


def rank_naive(matrix) -> int:
    """Textbook Gaussian elimination with rational (Scalar) arithmetic."""
    M = [[as_scalar(v) for v in r] for r in matrix]
    if not M:
        return 0
    m, ncols = len(M), len(M[0])
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, m) if M[i][col]), None)
        if sel is None:
            continue
        M[r], M[sel] = M[sel], M[r]
        inv = M[r][col].inv()
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == m:
            break
    return r


# -- subspaces spanned by exact vectors --------------------------------------------------


class Subspace:
    """A subspace of the span of ``monos`` with a canonical basis.

    ``vectors[i]`` is a dict ``mono -> Scalar`` with coefficient 1 at
    ``pivots[i]`` and 0 at every other pivot, so coordinates of a member are
    read off at the pivots.
    """

    def __init__(self, monos, vectors, pivots, ambient_dim=None):
        self.monos = list(monos)
        self.vectors = list(vectors)
        self.pivots = list(pivots)
        self.ambient_dim = len(self.monos) if ambient_dim is None else ambient_dim

    @classmethod
    def full(cls, monos) -> "Subspace":
        monos = list(monos)
        return cls(monos, [{m: ONE} for m in monos], monos)

    @classmethod
    def kernel(cls, monos, operators) -> "Subspace":
        """Joint kernel of ``operators`` (objects with ``on_mono``) on ``span(monos)``."""
        monos = list(monos)
        rows: dict = {}
        for j, mono in enumerate(monos):
            for oi, op in enumerate(operators):
                for out, c in op.on_mono(mono).items():
                    rows.setdefault((oi, out), {})[j] = c
        free, basis = _nullspace(rows.values(), len(monos))
        vectors, pivots = [], []
        for vec, f in zip(basis, free):
            vectors.append({monos[j]: v for j, v in sorted(vec.items())})
            pivots.append(monos[f])
        return cls(monos, vectors, pivots)

    @classmethod
    def span(cls, monos, elements) -> "Subspace":
        """Canonical (reduced) basis of the span of the given term dicts."""
        monos = list(monos)
        col = {m: j for j, m in enumerate(monos)}
        rows = []
        for e in elements:
            try:
                rows.append({col[m]: v for m, v in e.items()})
            except KeyError as exc:
                raise NotInSpan(f"vector has a term outside the ambient basis: {exc}") from None
        # rational RREF on the (small) spanning set
        ech = SparseEchelon()
        for r in rows:
            ech.add(r)
        piv_rows = {c: dict(r) for c, r in ech.pivots.items()}
        order = sorted(piv_rows)
        for c in reversed(order):
            rc = piv_rows[c]
            for c2 in order:
                if c2 == c:
                    continue
                r2 = piv_rows[c2]
                f = r2.get(c)
                if f:
                    for j, v in rc.items():
                        s = r2.get(j, ZERO) - f * v
                        if s:
                            r2[j] = s
                        else:
                            r2.pop(j, None)
        vectors = [{monos[j]: v for j, v in sorted(piv_rows[c].items())} for c in order]
        return cls(monos, vectors, [monos[c] for c in order])

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def coords(self, terms: dict) -> list:
        """Coordinates of ``terms`` in the canonical basis; raises NotInSpan."""
        coeffs = [terms.get(p, ZERO) for p in self.pivots]
        resid = dict(terms)
        for c, vec in zip(coeffs, self.vectors):
            if not c:
                continue
            for m, v in vec.items():
                s = resid.get(m, ZERO) - c * v
                if s:
                    resid[m] = s
                else:
                    resid.pop(m, None)
        if resid:
            raise NotInSpan(f"vector not in subspace ({len(resid)} residual terms)")
        return coeffs

    def contains(self, terms: dict) -> bool:
        try:
            self.coords(terms)
        except NotInSpan:
            return False
        return True

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


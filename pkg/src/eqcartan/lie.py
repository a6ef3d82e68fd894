"""Lie algebra data: structure constants, the twist matrix, brackets.

Indices are 0-based internally.  Text interfaces (config files, printed
reports) use 1-based indices, matching the usual ``e_1, ..., e_n`` naming.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .report import ValidationReport
from .scalars import ZERO, Scalar, as_scalar

__all__ = [
    "LieAlgebraSpec",
    "LieVector",
    "validate",
    "bracket",
    "twist_apply",
    "twist_equivariance_check",
    "preset",
    "PRESETS",
]


class LieVector(tuple):
    """Coefficients ``(X^1, ..., X^n)`` of ``X = sum X^i e_i`` (complexified)."""

    def __new__(cls, coeffs: Iterable):
        return super().__new__(cls, (as_scalar(c) for c in coeffs))

    @classmethod
    def basis(cls, n: int, i: int) -> "LieVector":
        return cls(1 if j == i else 0 for j in range(n))

    @classmethod
    def zero(cls, n: int) -> "LieVector":
        return cls([0] * n)

    def __add__(self, other):
        _same_dim(self, other)
        return LieVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _same_dim(self, other)
        return LieVector(a - b for a, b in zip(self, other))

    def scale(self, s) -> "LieVector":
        s = as_scalar(s)
        return LieVector(s * a for a in self)

    def __repr__(self):
        return "LieVector([" + ", ".join(str(c) for c in self) + "])"


def _same_dim(x, y):
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    """Dimension, structure constants ``c^i_{jk}`` and twist ``f_i^j``.

    ``constants`` holds only keys ``(i, j, k)`` with ``j < k``; the ``j > k``
    value follows from antisymmetry.  ``raw`` keeps the entries exactly as
    supplied so that :func:`validate` can report inconsistent input.
    ``twist[i][j]`` is ``f_i^j``.
    """

    n: int
    constants: dict = field(default_factory=dict)
    twist: tuple = ()
    raw: tuple = ()
    name: str = "custom"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Lie algebra dimension must be positive")
        if not self.twist:
            object.__setattr__(self, "twist", tuple((Fraction(0),) * self.n for _ in range(self.n)))
        tw = tuple(tuple(Fraction(x) for x in row) for row in self.twist)
        if len(tw) != self.n or any(len(row) != self.n for row in tw):
            raise ValueError(f"twist matrix must be {self.n}x{self.n}")
        object.__setattr__(self, "twist", tw)
        object.__setattr__(self, "_c", self._dense())

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple], twist=None, name="custom") -> "LieAlgebraSpec":
        """Build from ``(i, j, k, value)`` entries, 0-based, any ``j, k`` order."""
        raw = []
        canon: dict = {}
        for i, j, k, v in entries:
            for idx in (i, j, k):
                if not 0 <= idx < n:
                    raise ValueError(f"index {idx} out of range for dimension {n}")
            v = Fraction(v)
            raw.append((i, j, k, v))
            if j < k:
                canon[(i, j, k)] = v
            elif j > k and (i, k, j) not in canon:
                canon[(i, k, j)] = -v
        canon = {key: v for key, v in canon.items() if v}
        return cls(n=n, constants=canon, twist=tuple(twist) if twist else (), raw=tuple(raw), name=name)

    def with_twist(self, twist) -> "LieAlgebraSpec":
        return LieAlgebraSpec(n=self.n, constants=self.constants, twist=tuple(twist), raw=self.raw, name=self.name)

    def _dense(self):
        n = self.n
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in self.constants.items():
            c[i][j][k] = v
            c[i][k][j] = -v
        return c

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Structure constant ``c^i_{jk}``."""
        return self._c[i][j][k]

    def f(self, i: int, j: int) -> Fraction:
        """Twist entry ``f_i^j``."""
        return self.twist[i][j]

    @property
    def is_abelian(self) -> bool:
        return not self.constants

    @property
    def is_untwisted(self) -> bool:
        return all(not x for row in self.twist for x in row)

    def bracket_basis(self, j: int, k: int) -> LieVector:
        """``[e_j, e_k]`` as a vector."""
        return LieVector(self._c[i][j][k] for i in range(self.n))

    def twisted_direction(self, k: int) -> LieVector:
        """``e_k + I*f(e_k)``: the direction of the twisted contraction."""
        y = twist_apply(self, LieVector.basis(self.n, k))
        return LieVector(Scalar(1 if i == k else 0) + Scalar(0, 1) * y[i] for i in range(self.n))

    def __repr__(self):
        return f"LieAlgebraSpec(name={self.name!r}, n={self.n})"


def validate(spec: LieAlgebraSpec) -> ValidationReport:
    """Report antisymmetry and Jacobi violations.

    Antisymmetry is checked on the entries as supplied; Jacobi on the full
    array obtained by filling unspecified ``c^i_{kj}`` from ``-c^i_{jk}``.
    """
    report = ValidationReport("lie.validate")
    n = spec.n
    given: dict = {}
    for i, j, k, v in spec.raw:
        given[(i, j, k)] = v
    for (i, j, k), v in sorted(given.items()):
        if j == k and v:
            report.add("antisymmetry", (i + 1, j + 1, k + 1), v)
        elif j < k and (i, k, j) in given:
            resid = v + given[(i, k, j)]
            if resid:
                report.add("antisymmetry", (i + 1, j + 1, k + 1), resid)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in given.items():
        c[i][j][k] = v
    for (i, j, k), v in given.items():
        if (i, k, j) not in given:
            c[i][k][j] = -v
    if not spec.raw:
        c = spec._c
    for i, j, k, l in product(range(n), repeat=4):
        s = Fraction(0)
        for m in range(n):
            s += c[m][j][k] * c[i][m][l] + c[m][k][l] * c[i][m][j] + c[m][l][j] * c[i][m][k]
        if s:
            report.add("jacobi", (i + 1, j + 1, k + 1, l + 1), s)
    return report


def bracket(spec: LieAlgebraSpec, x: Sequence, y: Sequence) -> LieVector:
    if len(x) != spec.n or len(y) != spec.n:
        raise ValueError(f"dimension mismatch: expected vectors of length {spec.n}")
    x = LieVector(x)
    y = LieVector(y)
    out = [ZERO] * spec.n
    for (i, j, k), v in spec.constants.items():
        # c^i_{jk} (x^j y^k - x^k y^j), j < k
        t = x[j] * y[k] - x[k] * y[j]
        if t:
            out[i] = out[i] + t * v
    return LieVector(out)


def twist_apply(spec: LieAlgebraSpec, x: Sequence) -> LieVector:
    """``Y^i = sum_j f_j^i X^j``."""
    if len(x) != spec.n:
        raise ValueError(f"dimension mismatch: expected length {spec.n}, got {len(x)}")
    x = LieVector(x)
    out = []
    for i in range(spec.n):
        s = ZERO
        for j in range(spec.n):
            fji = spec.twist[j][i]
            if fji and x[j]:
                s = s + x[j] * fji
        out.append(s)
    return LieVector(out)


def twist_equivariance_check(spec: LieAlgebraSpec) -> ValidationReport:
    """Report where the twist fails to commute with the adjoint action.

    With ``F(e_m) = sum_k f_m^k e_k`` and ``ad_i(e_m) = sum_j c^j_{im} e_j``,
    entry ``(i, m, k)`` is the ``e_k`` coefficient of ``[ad_i, F](e_m)``.
    """
    report = ValidationReport("lie.twist_equivariance")
    n = spec.n
    c, f = spec._c, spec.twist
    for i, m, k in product(range(n), repeat=3):
        s = Fraction(0)
        for j in range(n):
            s += f[m][j] * c[k][i][j] - c[j][i][m] * f[j][k]
        if s:
            report.add("twist_not_equivariant", (i + 1, m + 1, k + 1), s)
    return report


# -- presets -----------------------------------------------------------------


def abelian(n: int) -> LieAlgebraSpec:
    return LieAlgebraSpec(n=n, name=f"abelian({n})")


def su2() -> LieAlgebraSpec:
    # c^i_{jk} = epsilon_{ijk}
    entries = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]
    return LieAlgebraSpec.from_entries(3, entries, name="su2")


def heisenberg3() -> LieAlgebraSpec:
    # [e_1, e_2] = e_3
    return LieAlgebraSpec.from_entries(3, [(2, 0, 1, 1)], name="heisenberg3")


PRESETS = {
    "su2": su2,
    "so3": su2,
    "heisenberg3": heisenberg3,
}


def preset(name: str) -> LieAlgebraSpec:
    """Look up a bundled algebra: ``abelian(n)``, ``su2``, ``so3``, ``heisenberg3``."""
    name = name.strip()
    if name.startswith("abelian"):
        inner = name[len("abelian"):].strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise KeyError(f"unknown preset {name!r}; use abelian(n)")
        try:
            n = int(inner[1:-1])
        except ValueError:
            raise KeyError(f"unknown preset {name!r}") from None
        return abelian(n)
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}") from None

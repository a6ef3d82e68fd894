"""Per-degree matrices of a differential on graded subspaces, and Betti tables."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import NotInSpan, SparseEchelon, Subspace
from .report import ValidationReport

__all__ = [
    "DegreeMatrix",
    "BettiRow",
    "BettiTable",
    "ImageEscapesSubspace",
    "NotAComplex",
    "matrix_of",
    "betti",
    "complex_matrices",
    "equivariant_cohomology",
    "weil_cohomology",
    "MODELS",
]

MODELS = ("cartan", "weil")


class ImageEscapesSubspace(ValueError):
    """The operator maps a domain vector outside the codomain span."""


class NotAComplex(ValueError):
    """Consecutive matrices do not compose to zero."""


@dataclass
class DegreeMatrix:
    """``entries[(row, col)]``: column ``j`` holds the coordinates of the image of domain vector ``j``."""

    degree: int
    nrows: int
    ncols: int
    entries: dict

    def columns(self) -> list:
        cols = [dict() for _ in range(self.ncols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def rank(self) -> int:
        ech = SparseEchelon()
        for col in self.columns():
            ech.add(col)
        return ech.rank

    def dense(self) -> list:
        from .scalars import ZERO

        return [[self.entries.get((r, c), ZERO) for c in range(self.ncols)] for r in range(self.nrows)]


def matrix_of(operator, domain: Subspace, codomain: Subspace, degree: int = 0) -> DegreeMatrix:
    entries = {}
    for j, vec in enumerate(domain.vectors):
        image = operator.apply_terms(vec)
        try:
            coords = codomain.coords(image)
        except NotInSpan as exc:
            raise ImageEscapesSubspace(f"degree {degree}, basis vector {j}: {exc}") from None
        for i, c in enumerate(coords):
            if c:
                entries[(i, j)] = c
    return DegreeMatrix(degree, codomain.dim, domain.dim, entries)


def _compose(a: DegreeMatrix, b: DegreeMatrix) -> dict:
    """Entries of ``a @ b``."""
    out: dict = {}
    rows_of_a: dict = {}
    for (r, c), v in a.entries.items():
        rows_of_a.setdefault(c, []).append((r, v))
    for (k, j), v in b.entries.items():
        for i, w in rows_of_a.get(k, ()):
            s = out.get((i, j))
            s = w * v if s is None else s + w * v
            if s:
                out[(i, j)] = s
            else:
                out.pop((i, j), None)
    return out


@dataclass(frozen=True)
class BettiRow:
    degree: int
    dim: int
    ker: int
    im: int

    @property
    def betti(self) -> int:
        return self.ker - self.im


@dataclass
class BettiTable:
    rows: list

    @property
    def betti(self) -> list:
        return [r.betti for r in self.rows]

    def tsv(self) -> str:
        lines = ["degree\tdim\tker\tim\tbetti"]
        lines += [f"{r.degree}\t{r.dim}\t{r.ker}\t{r.im}\t{r.betti}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def __len__(self):
        return len(self.rows)


def betti(matrices: list, top: int, check: bool = True) -> BettiTable:
    """``matrices[d]`` maps degree ``d`` to ``d + 1``; rows for ``d < top`` only."""
    if check:
        for d in range(1, len(matrices)):
            if _compose(matrices[d], matrices[d - 1]):
                raise NotAComplex(f"d o d != 0 from degree {d - 1} to {d + 1}")
    ranks = [m.rank() for m in matrices]
    rows = []
    for d in range(min(top, len(matrices))):
        dim = matrices[d].ncols
        rows.append(BettiRow(d, dim, dim - ranks[d], ranks[d - 1] if d else 0))
    for r in rows:
        if r.betti < 0:
            raise NotAComplex(f"negative Betti number in degree {r.degree}")
    return BettiTable(rows)


def complex_matrices(operator, subspaces: dict, top: int) -> list:
    """Matrices of ``operator`` from degree ``d`` to ``d + 1`` for ``d < top``."""
    return [matrix_of(operator, subspaces[d], subspaces[d + 1], d) for d in range(top)]


def weil_cohomology(weil, top: int) -> BettiTable:
    """Betti table of ``(W(g), d_W)``, degrees below ``top``."""
    subs = {d: Subspace.full(weil.alg.basis_of_degree(d)) for d in range(top + 1)}
    return betti(complex_matrices(weil.d_W, subs, top), top)


def equivariant_cohomology(tensor, top: int, model: str = "weil", basic_mode: str = "twisted_pairs",
                           invariance: str = "per_generator", sign: str = "minus") -> BettiTable:
    """Cohomology of the basic subcomplex (``weil``) or the invariant Cartan complex (``cartan``)."""
    if model == "weil":
        subs = tensor.basic_subspace(top, basic_mode)
        return betti(complex_matrices(tensor.D, subs, top), top)
    if model == "cartan":
        from .cartan import CartanModel

        cartan = CartanModel(tensor, sign)
        subs = cartan.invariant_subspace(top, invariance)
        return betti(complex_matrices(cartan.d_C, subs, top), top)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def check_complex(operator, subspaces: dict, top: int, name: str) -> ValidationReport:
    """Report image escapes and ``d o d != 0`` without raising."""
    report = ValidationReport(name)
    try:
        mats = complex_matrices(operator, subspaces, top)
        report.checked = len(mats)
        for d in range(1, len(mats)):
            if _compose(mats[d], mats[d - 1]):
                report.add("d o d != 0", f"degree {d - 1}")
    except ImageEscapesSubspace as exc:
        report.add("image escapes subspace", str(exc))
    return report

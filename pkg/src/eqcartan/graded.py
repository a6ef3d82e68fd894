"""Sparse elements of W(g) (x) A and the operator algebra acting on them.

A monomial is a plain tuple ``(theta, phi, m)``:

* ``theta`` -- strictly increasing tuple of 0-based indices (a product of
  the odd generators, degree 1 each),
* ``phi`` -- exponent vector of length ``n`` (a monomial in the even
  generators, degree 2 each),
* ``m`` -- an integer index into the module's graded basis (``0`` is the
  unit of the module).

An :class:`Element` maps monomials to nonzero :class:`~eqcartan.scalars.Scalar`
coefficients.  The product is only available through an :class:`Algebra`,
which knows ``n`` and the module.

Operators are linear maps defined monomial-by-monomial and memoised.  The
module factor enters with the Koszul sign: for a module operator ``Q`` of
degree ``q``, ``(1 (x) Q)(w (x) a) = (-1)^{q |w|} w (x) Q(a)``.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from .scalars import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Element",
    "Algebra",
    "Operator",
    "Derivation",
    "ModuleOperator",
    "LeftMultiplication",
    "compose",
    "commutator",
    "anticommutator",
    "graded_commutator",
    "zero_operator",
    "identity_operator",
    "truncate",
    "AmbientMismatch",
    "MissingGeneratorImage",
    "merge_theta",
]


class AmbientMismatch(ValueError):
    pass


class MissingGeneratorImage(KeyError):
    pass


# -- monomial helpers ----------------------------------------------------------


def merge_theta(a: tuple, b: tuple):
    """Sign and sorted union of two theta words, or ``(0, None)`` if they overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    inv = 0
    for x in b:
        pos = bisect_right(a, x)
        if pos and a[pos - 1] == x:
            return 0, None
        inv += len(a) - pos
    merged = tuple(sorted(a + b))
    return (-1 if inv & 1 else 1), merged


def _add_phi(p: tuple, q: tuple) -> tuple:
    return tuple(x + y for x, y in zip(p, q))


def _acc(out: dict, key, c):
    """out[key] += c, dropping zeros."""
    old = out.get(key)
    if old is None:
        out[key] = c
    else:
        s = old + c
        if s:
            out[key] = s
        else:
            del out[key]


def _acc_terms(out: dict, terms: dict, c=None):
    # _acc inlined: this is the innermost loop of every operator check
    get = out.get
    for k, v in terms.items():
        if c is not None:
            v = v * c
        old = get(k)
        if old is None:
            out[k] = v
        else:
            v = old + v
            if v:
                out[k] = v
            else:
                del out[k]


# -- elements ----------------------------------------------------------------


class Element:
    """Finite linear combination of monomials; zero coefficients never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {k: as_scalar(v) for k, v in dict(terms).items() if v}

    @classmethod
    def _wrap(cls, terms: dict) -> "Element":
        e = object.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def monomial(cls, mono, coeff=ONE) -> "Element":
        return cls._wrap({mono: as_scalar(coeff)}) if coeff else cls()

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, mono) -> Scalar:
        return self.terms.get(mono, ZERO)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        _acc_terms(out, other.terms)
        return Element._wrap(out)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, -v)
        return Element._wrap(out)

    def __neg__(self):
        return Element._wrap({k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "Element":
        c = as_scalar(c)
        if not c:
            return Element()
        return Element._wrap({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        return self.scale(c)

    def __repr__(self):
        return f"Element({len(self.terms)} terms)"


def truncate(x: Element, degree_of: Callable, top: int) -> Element:
    """Drop every term of total degree above ``top``.

    ``degree_of`` is usually ``Algebra.degree``.
    """
    if top < 0:
        raise ValueError("truncation degree must be non-negative")
    return Element._wrap({k: v for k, v in x.terms.items() if degree_of(k) <= top})


# -- the ambient algebra -------------------------------------------------------


class Algebra:
    """The graded algebra Lambda(g*) (x) S(g*) (x) A for a given module A."""

    def __init__(self, n: int, module):
        self.n = n
        self.module = module
        self.zero_phi = (0,) * n
        self.unit_mono = ((), self.zero_phi, module.unit)

    # generators

    def one(self) -> Element:
        return Element.monomial(self.unit_mono)

    def scalar(self, c) -> Element:
        return Element.monomial(self.unit_mono, c)

    def theta(self, i: int) -> Element:
        return Element.monomial(((i,), self.zero_phi, self.module.unit))

    def phi(self, i: int, power: int = 1) -> Element:
        p = [0] * self.n
        p[i] = power
        return Element.monomial(((), tuple(p), self.module.unit))

    def module_element(self, m: int, coeff=ONE) -> Element:
        return Element.monomial(((), self.zero_phi, m), coeff)

    def lift_module(self, terms: dict) -> Element:
        """Embed a module vector ``{m: c}`` as ``1 (x) a``."""
        z = self.zero_phi
        return Element._wrap({((), z, m): c for m, c in terms.items() if c})

    # grading

    def degree(self, mono) -> int:
        theta, phi, m = mono
        return len(theta) + 2 * sum(phi) + self.module.degree(m)

    def weil_degree(self, mono) -> int:
        return len(mono[0]) + 2 * sum(mono[1])

    def homogeneous_parts(self, x: Element) -> dict:
        parts: dict = {}
        for k, v in x.terms.items():
            parts.setdefault(self.degree(k), {})[k] = v
        return {d: Element._wrap(t) for d, t in sorted(parts.items())}

    def is_homogeneous(self, x: Element) -> bool:
        return len({self.degree(k) for k in x.terms}) <= 1

    def sector(self, mono) -> int:
        return self.module.sector(mono[2])

    def check(self, x: Element):
        for theta, phi, m in x.terms:
            if len(phi) != self.n or not self.module.has_index(m) or any(i >= self.n for i in theta):
                raise AmbientMismatch(f"monomial {(theta, phi, m)} is not in this algebra")

    # product

    def mono_mul(self, a, b) -> dict:
        ta, pa, ma = a
        tb, pb, mb = b
        sign, theta = merge_theta(ta, tb)
        if not sign:
            return {}
        if len(tb) & 1 and self.module.degree(ma) & 1:
            sign = -sign
        phi = _add_phi(pa, pb)
        mod = self.module.mul(ma, mb)
        if sign > 0:
            return {(theta, phi, m): c for m, c in mod.items()}
        return {(theta, phi, m): -c for m, c in mod.items()}

    def mul(self, x: Element, y: Element) -> Element:
        if x.terms and y.terms:
            self.check(Element._wrap(dict([next(iter(x.terms.items()))])))
            self.check(Element._wrap(dict([next(iter(y.terms.items()))])))
        out: dict = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                prod = self.mono_mul(a, b)
                if prod:
                    _acc_terms(out, prod, ca * cb)
        return Element._wrap(out)

    def power(self, x: Element, k: int) -> Element:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    # bases

    def weil_monomials(self, d: int, theta_free: bool = False) -> list:
        """Weil monomials ``(theta, phi)`` of degree ``d`` in canonical order."""
        n = self.n
        out = []
        max_t = 0 if theta_free else min(n, d)
        for t in range(max_t + 1):
            if (d - t) % 2:
                continue
            w = (d - t) // 2
            for theta in combinations(range(n), t):
                for phi in _phi_vectors(n, w):
                    out.append((theta, phi))
        out.sort(key=lambda tp: _word(tp[0], tp[1], n))
        return out

    def basis_of_degree(self, d: int, theta_free: bool = False) -> list:
        """Canonical basis of the degree-``d`` part.

        Order: the Weil word (theta indices, then phi indices with
        multiplicity, thetas before phis) lexicographically, then module
        index.
        """
        if d < 0:
            return []
        out = []
        for md in range(0, d + 1):
            mods = self.module.basis(md)
            if not mods:
                continue
            for theta, phi in self.weil_monomials(d - md, theta_free):
                for m in mods:
                    out.append((theta, phi, m))
        out.sort(key=self.sort_key)
        return out

    def basis_up_to(self, top: int, theta_free: bool = False) -> list:
        out = []
        for d in range(top + 1):
            out.extend(self.basis_of_degree(d, theta_free))
        return out

    def sort_key(self, mono):
        theta, phi, m = mono
        return (_word(theta, phi, self.n), m)

    def print_key(self, mono):
        return (self.degree(mono),) + self.sort_key(mono)

    # text

    def format(self, x: Element) -> str:
        if not x.terms:
            return "0"
        pieces = []
        for mono in sorted(x.terms, key=self.print_key):
            pieces.append(self._format_term(mono, x.terms[mono]))
        text = pieces[0]
        for p in pieces[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def _format_term(self, mono, c: Scalar) -> str:
        theta, phi, m = mono
        factors = []
        if theta:
            factors.append("^".join(f"t{i + 1}" for i in theta))
        for i, e in enumerate(phi):
            if e == 1:
                factors.append(f"p{i + 1}")
            elif e > 1:
                factors.append(f"p{i + 1}^{e}")
        if m != self.module.unit:
            factors.append(f"[m:{m}]")
        body = "*".join(factors)
        if not body:
            return str(c)
        if c == ONE:
            return body
        if c == -ONE:
            return "-" + body
        ctext = str(c)
        if not c.is_real() and c.re:
            ctext = f"({ctext})"
        return f"{ctext}*{body}"

    def parse(self, text: str) -> Element:
        return _Parser(self, text).parse()


def _phi_vectors(n: int, weight: int):
    """All exponent vectors of length n summing to ``weight``."""
    if n == 0:
        if weight == 0:
            yield ()
        return
    if n == 1:
        yield (weight,)
        return
    for first in range(weight, -1, -1):
        for rest in _phi_vectors(n - 1, weight - first):
            yield (first,) + rest


def _word(theta, phi, n):
    word = list(theta)
    for i, e in enumerate(phi):
        word.extend([n + i] * e)
    return tuple(word)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<theta>t\d+(?:\^t\d+)*)|(?P<phi>p\d+)|(?P<mod>\[m:\d+\])|(?P<I>I)|(?P<op>[-+*/()^]))")


class _Parser:
    """Recursive-descent parser for the printing grammar."""

    def __init__(self, alg: Algebra, text: str):
        self.alg = alg
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse element at {text[pos:]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Element:
        if not self.tokens:
            raise ValueError("empty element expression")
        x = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input at token {self.peek()[1]!r}")
        self.alg.check(x)
        return x

    def expr(self) -> Element:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        x = self.term()
        if sign < 0:
            x = -x
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                y = self.term()
                x = x + y if val == "+" else x - y
            else:
                return x

    def term(self) -> Element:
        x = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                x = self.alg.mul(x, self.factor())
            elif kind == "op" and val == "/":
                self.take()
                k2, v2 = self.take()
                if k2 != "num":
                    raise ValueError("expected integer after '/'")
                x = x.scale(Scalar(Fraction(1, int(v2))))
            else:
                return x

    def factor(self) -> Element:
        kind, val = self.take()
        alg = self.alg
        if kind == "num":
            return alg.scalar(int(val))
        if kind == "I":
            return alg.scalar(Scalar(0, 1))
        if kind == "theta":
            out = alg.one()
            for part in val.split("^"):
                out = alg.mul(out, alg.theta(self._index(part[1:])))
            return out
        if kind == "phi":
            i = self._index(val[1:])
            k, v = self.peek()
            if k == "op" and v == "^":
                self.take()
                k2, v2 = self.take()
                if k2 != "num":
                    raise ValueError("expected exponent after '^'")
                return alg.phi(i, int(v2))
            return alg.phi(i)
        if kind == "mod":
            m = int(val[3:-1])
            if not alg.module.has_index(m):
                raise AmbientMismatch(f"module has no basis element {m}")
            return alg.module_element(m)
        if kind == "op" and val == "(":
            x = self.expr()
            k, v = self.take()
            if v != ")":
                raise ValueError("missing ')'")
            return x
        raise ValueError(f"unexpected token {val!r}")

    def _index(self, text):
        i = int(text) - 1
        if not 0 <= i < self.alg.n:
            raise AmbientMismatch(f"generator index {i + 1} out of range 1..{self.alg.n}")
        return i


# -- operators -----------------------------------------------------------------


class Operator:
    """A linear map given on monomials, with a memo table.

    ``degree`` is the operator's degree; only its parity matters for signs.
    """

    def __init__(self, degree: int, fn: Callable[[tuple], dict], name: str = "op"):
        self.degree = degree
        self._fn = fn
        self.name = name
        self._cache: dict = {}

    def on_mono(self, mono) -> dict:
        r = self._cache.get(mono)
        if r is None:
            r = self._fn(mono)
            self._cache[mono] = r
        return r

    def apply_terms(self, terms: dict) -> dict:
        out: dict = {}
        for k, c in terms.items():
            r = self.on_mono(k)
            if r:
                if c == ONE:
                    _acc_terms(out, r)
                else:
                    _acc_terms(out, r, c)
        return out

    def __call__(self, x: Element) -> Element:
        return Element._wrap(self.apply_terms(x.terms))

    def __add__(self, other: "Operator") -> "Operator":
        def fn(mono):
            out = dict(self.on_mono(mono))
            _acc_terms(out, other.on_mono(mono))
            return out

        return Operator(self.degree, fn, f"({self.name} + {other.name})")

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def __neg__(self) -> "Operator":
        return Operator(self.degree, lambda mono: {k: -v for k, v in self.on_mono(mono).items()}, f"-{self.name}")

    def __rmul__(self, c) -> "Operator":
        c = as_scalar(c)
        if not c:
            return zero_operator(self.degree)
        return Operator(self.degree, lambda mono: {k: v * c for k, v in self.on_mono(mono).items()}, f"{c}*{self.name}")

    def __matmul__(self, other: "Operator") -> "Operator":
        return compose(self, other)

    def __repr__(self):
        return f"Operator({self.name}, degree={self.degree})"


def compose(p: Operator, q: Operator) -> Operator:
    """``p o q``."""
    return Operator(p.degree + q.degree, lambda mono: p.apply_terms(q.on_mono(mono)), f"{p.name}.{q.name}")


def _bracket(p: Operator, q: Operator, sign: int, name: str) -> Operator:
    def fn(mono):
        out = p.apply_terms(q.on_mono(mono))
        other = q.apply_terms(p.on_mono(mono))
        _acc_terms(out, other if sign > 0 else {k: -v for k, v in other.items()})
        return out

    return Operator(p.degree + q.degree, fn, name)


def commutator(p: Operator, q: Operator) -> Operator:
    """``pq - qp``."""
    return _bracket(p, q, -1, f"[{p.name}, {q.name}]")


def anticommutator(p: Operator, q: Operator) -> Operator:
    """``pq + qp``."""
    return _bracket(p, q, 1, f"{{{p.name}, {q.name}}}")


def graded_commutator(p: Operator, q: Operator) -> Operator:
    if p.degree % 2 and q.degree % 2:
        return anticommutator(p, q)
    return commutator(p, q)


def zero_operator(degree: int = 0) -> Operator:
    return Operator(degree, lambda mono: {}, "0")


def identity_operator() -> Operator:
    return Operator(0, lambda mono: {mono: ONE}, "1")


def sum_operators(ops: Iterable[Operator], degree: int | None = None) -> Operator:
    ops = list(ops)
    if not ops:
        return zero_operator(degree or 0)
    deg = ops[0].degree if degree is None else degree

    def fn(mono):
        out: dict = {}
        for op in ops:
            _acc_terms(out, op.on_mono(mono))
        return out

    return Operator(deg, fn, "sum")


class ModuleOperator(Operator):
    """``1 (x) Q`` for a module operator ``Q`` given on module basis indices."""

    def __init__(self, degree: int, module_fn: Callable[[int], dict], name: str = "1xQ"):
        odd = degree & 1

        def fn(mono):
            theta, phi, m = mono
            r = module_fn(m)
            if not r:
                return {}
            if odd and len(theta) & 1:
                return {(theta, phi, m2): -c for m2, c in r.items()}
            return {(theta, phi, m2): c for m2, c in r.items()}

        super().__init__(degree, fn, name)


class LeftMultiplication(Operator):
    """``x -> u * x`` for a fixed element ``u`` of the ambient algebra."""

    def __init__(self, alg: Algebra, u: Element, name: str = "mul"):
        degrees = {alg.degree(k) for k in u.terms}
        deg = degrees.pop() if len(degrees) == 1 else 0
        terms = dict(u.terms)

        def fn(mono):
            out: dict = {}
            for k, c in terms.items():
                prod = alg.mono_mul(k, mono)
                if prod:
                    _acc_terms(out, prod, c)
            return out

        super().__init__(deg, fn, name)


class Derivation(Operator):
    """Graded derivation of W(g) (x) A extended from generator images.

    ``theta_images[i]`` and ``phi_images[i]`` are elements of W(g) (module
    part the unit); ``module_fn`` gives the action on module basis indices
    (``None`` for the zero action, i.e. the operator ``P (x) 1``).  The
    signed Leibniz rule is

        D(x y) = D(x) y + (-1)^{deg D |x|} x D(y).
    """

    def __init__(self, alg: Algebra, degree: int, theta_images, phi_images, module_fn=None,
                 name: str = "der", _weil_cache=None):
        n = alg.n
        if len(theta_images) != n or len(phi_images) != n:
            raise MissingGeneratorImage(f"derivation {name!r} needs images for all {n} theta and phi generators")
        for img in list(theta_images) + list(phi_images):
            if img is None:
                raise MissingGeneratorImage(f"derivation {name!r} has a missing generator image")
        self.alg = alg
        self.theta_images = [dict(e.terms) for e in theta_images]
        self.phi_images = [dict(e.terms) for e in phi_images]
        self.module_fn = module_fn
        self._wcache = {} if _weil_cache is None else _weil_cache
        odd = degree & 1
        unit = alg.module.unit

        def fn(mono):
            theta, phi, m = mono
            out: dict = {}
            if m == unit:
                return dict(self._weil((theta, phi)))
            for (t2, p2, _), c in self._weil((theta, phi)).items():
                out[(t2, p2, m)] = c
            if module_fn is not None:
                r = module_fn(m)
                if r:
                    flip = odd and len(theta) & 1
                    for m2, c in r.items():
                        _acc(out, (theta, phi, m2), -c if flip else c)
            return out

        super().__init__(degree, fn, name)

    def with_module(self, module_fn, name=None, alg=None) -> "Derivation":
        """Same Weil action, different module action (shares the Weil memo)."""
        return Derivation(alg or self.alg, self.degree, [Element._wrap(t) for t in self.theta_images],
                          [Element._wrap(t) for t in self.phi_images], module_fn,
                          name or self.name, _weil_cache=self._wcache)

    def _weil(self, w) -> dict:
        r = self._wcache.get(w)
        if r is None:
            r = self._weil_uncached(w)
            self._wcache[w] = r
        return r

    def _weil_uncached(self, w) -> dict:
        theta, phi = w
        alg = self.alg
        unit = alg.module.unit
        odd = self.degree & 1
        out: dict = {}
        # theta factors
        for s, i in enumerate(theta):
            img = self.theta_images[i]
            if not img:
                continue
            left = theta[:s]
            right = theta[s + 1:]
            sign0 = -1 if (odd and s & 1) else 1
            for (ti, pi, _), c in img.items():
                s1, t1 = merge_theta(left, ti)
                if not s1:
                    continue
                s2, t2 = merge_theta(t1, right)
                if not s2:
                    continue
                sg = sign0 * s1 * s2
                _acc(out, (t2, _add_phi(pi, phi), unit), c if sg > 0 else -c)
        # phi factors (even: no position sign beyond passing the thetas)
        sign_t = -1 if (odd and len(theta) & 1) else 1
        for j, e in enumerate(phi):
            if not e:
                continue
            img = self.phi_images[j]
            if not img:
                continue
            rest = list(phi)
            rest[j] -= 1
            rest = tuple(rest)
            for (ti, pi, _), c in img.items():
                s1, t1 = merge_theta(theta, ti)
                if not s1:
                    continue
                sg = sign_t * s1
                coef = c * e
                _acc(out, (t1, _add_phi(pi, rest), unit), coef if sg > 0 else -coef)
        return out

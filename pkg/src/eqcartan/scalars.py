"""Exact arithmetic in the Gaussian rationals Q(i).

A :class:`Scalar` is stored as ``(a + b*I) / q`` with integers ``a, b`` and a
positive integer ``q`` such that ``gcd(a, b, q) == 1``.  Keeping a single
common denominator makes multiplication and addition cost one gcd each,
which matters because every identity check in the package funnels through
here.  The real and imaginary parts are exposed as reduced
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar", "parse_scalar", "parse_rational"]


class Scalar:
    __slots__ = ("_a", "_b", "_q", "_hash")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        q = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (q // re.denominator), im.numerator * (q // im.denominator), q)

    def _set(self, a, b, q):
        g = gcd(a, b, q)
        if g != 1:
            a //= g
            b //= g
            q //= g
        self._a = a
        self._b = b
        self._q = q
        self._hash = None

    @classmethod
    def _make(cls, a, b, q):
        s = object.__new__(cls)
        if q == 1:
            s._a, s._b, s._q, s._hash = a, b, 1, None
        else:
            s._set(a, b, q)
        return s

    @classmethod
    def from_int(cls, n):
        s = object.__new__(cls)
        s._a, s._b, s._q, s._hash = n, 0, 1, None
        return s

    # -- parts ---------------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._q)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._q)

    def gaussian_parts(self):
        """Return ``(a, b, q)`` with self == (a + b*I)/q, reduced."""
        return self._a, self._b, self._q

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "Scalar":
        return Scalar._make(self._a, -self._b, self._q)

    def norm2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._q * self._q)

    # -- arithmetic ------------------------------------------------------------

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __neg__(self):
        s = object.__new__(Scalar)
        s._a, s._b, s._q, s._hash = -self._a, -self._b, self._q, None
        return s

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        q1, q2 = self._q, other._q
        if q1 == 1 and q2 == 1:
            s = object.__new__(Scalar)
            s._a, s._b, s._q, s._hash = self._a + other._a, self._b + other._b, 1, None
            return s
        if q1 == q2:
            return Scalar._make(self._a + other._a, self._b + other._b, q1)
        return Scalar._make(self._a * q2 + other._a * q1, self._b * q2 + other._b * q1, q1 * q2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                return Scalar._make(self._a * other, self._b * other, self._q)
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if b1 == 0 and b2 == 0:
            return Scalar._make(a1 * a2, 0, self._q * other._q)
        return Scalar._make(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._q * other._q)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        # q / (a + bI) = q (a - bI) / (a^2 + b^2)
        return Scalar._make(self._q * self._a, -self._q * self._b, n)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inv()

    # -- comparison / hashing ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._a == other._a and self._b == other._b and self._q == other._q
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._a, self._b, self._q)) if self._b else hash(Fraction(self._a, self._q))
        return self._hash

    # -- text ------------------------------------------------------------------

    def __str__(self):
        re_, im_ = self.re, self.im
        if not im_:
            return _qstr(re_)
        im_text = _qstr(im_) + "*I"
        if not re_:
            return im_text
        if im_ < 0:
            return _qstr(re_) + im_text
        return _qstr(re_) + "+" + im_text

    def __repr__(self):
        return f"Scalar({self})"


def _qstr(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Scalar.from_int(x)
    if isinstance(x, Fraction):
        return Scalar._make(x.numerator, 0, x.denominator)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
I = Scalar._make(0, 1, 1)

_RATIONAL = r"[+-]?\d+(?:/\d+)?"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``.  Floats are rejected."""
    text = text.strip()
    if not re.fullmatch(_RATIONAL, text):
        raise ValueError(f"not an exact rational: {text!r}")
    value = Fraction(text)
    return value


def parse_scalar(text: str) -> Scalar:
    """Parse the textual form ``a/b+c/d*I``; either part may be omitted.

    Accepted imaginary spellings: ``c/d*I``, ``cI``, ``I``, ``-I``.
    """
    t = text.replace(" ", "")
    if not t:
        raise ValueError("empty scalar")
    if not t.endswith("I"):
        return Scalar(parse_rational(t))
    body = t[:-1]
    if body.endswith("*"):
        body = body[:-1]
    # split real and imaginary parts at the last sign that is not leading
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_text, im_text = body[:cut], body[cut:]
    else:
        re_text, im_text = "", body
    if im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = parse_rational(im_text)
    re_part = parse_rational(re_text) if re_text else Fraction(0)
    return Scalar(re_part, im_part)

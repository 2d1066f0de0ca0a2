"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

import numbers
from math import gcd
from typing import Iterable, Sequence, Union

from .rational import SCALAR_TYPES, Rational

Scalar = Union[int, Rational]
RATIONAL = type(Rational(0))


def as_fraction(x) -> Rational:
    if isinstance(x, RATIONAL):
        return x
    if isinstance(x, numbers.Rational):
        return Rational(x)
    if isinstance(x, str):
        return Rational(x.strip().replace("−", "-"))
    raise TypeError("expected an exact rational, got %r" % (x,))


def fstr(x: Rational) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class Poly:
    """Immutable polynomial in z, coefficients stored low degree first.

    The tuple never carries trailing zeros, so the zero polynomial is ``()``
    and ``degree`` is ``len(coeffs) - 1`` (``-1`` for zero).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        # internal: cs already holds Rational instances
        while cs and cs[-1] == 0:
            cs.pop()
        out = object.__new__(cls)
        object.__setattr__(out, "coeffs", tuple(cs))
        return out

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def z(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def linear(cls, root: Scalar) -> "Poly":
        """The monic polynomial z - root."""
        return cls((-as_fraction(root), 1))

    @classmethod
    def promote(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else Rational(0)

    def __getitem__(self, i: int) -> Rational:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Rational(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, SCALAR_TYPES):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other) -> "Poly":
        other = Poly.promote(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly._raw([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.promote(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.promote(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, SCALAR_TYPES):
            c = Rational(other)
            return Poly._raw([c * a for a in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Rational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent for a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Rational(0)] * (len(rem) - dq)
        inv = 1 / other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return Poly._raw(quot), Poly._raw(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(Poly.promote(other))[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(Poly.promote(other))[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def __call__(self, x: Scalar) -> Rational:
        acc = Rational(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._raw([i * c for i, c in enumerate(self.coeffs) if i > 0])

    def shift(self, p: Scalar) -> "Poly":
        """Coefficients of self(p + s) as a polynomial in s (Taylor shift)."""
        p = as_fraction(p)
        cs = list(self.coeffs)
        n = len(cs)
        # synthetic division repeated n times
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += p * cs[j + 1]
        return Poly._raw(cs)

    def reverse(self, n: int | None = None) -> "Poly":
        """z^n * self(1/z); n defaults to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal length below degree")
        cs = list(self.coeffs) + [Rational(0)] * (n + 1 - len(self.coeffs))
        return Poly._raw(cs[::-1])

    def valuation(self) -> int:
        """Order of vanishing at z = 0; zero polynomial raises."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ValueError("valuation of the zero polynomial")

    def content_primitive(self) -> tuple[Rational, list[int]]:
        """Split into a rational content and a primitive integer polynomial."""
        if self.is_zero():
            return Rational(0), []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for a in ints:
            g = gcd(g, a)
        if ints[-1] < 0:
            g = -g
        return Rational(g, den), [a // g for a in ints]

    def __repr__(self):
        return "Poly(%s)" % str(self)

    def __str__(self):
        return format_poly(self.coeffs)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def format_poly(coeffs: Sequence[Rational], var: str = "z") -> str:
    """Render in the parser grammar, highest degree first."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if i == 0:
            body = fstr(a)
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            if a == 1:
                body = mono
            elif a.denominator == 1:
                body = "%s*%s" % (fstr(a), mono)
            elif a.numerator == 1:
                body = "%s/%d" % (mono, a.denominator)
            else:
                body = "%d*%s/%d" % (a.numerator, mono, a.denominator)
        if not terms:
            terms.append("-" + body if neg else body)
        else:
            terms.append(("- " if neg else "+ ") + body)
    return " ".join(terms) if terms else "0"

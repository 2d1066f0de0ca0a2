"""Rational functions and 1-forms on the projective line over Q."""

from __future__ import annotations

import math
from math import gcd
from typing import Union

from .poly import Poly, Scalar, as_fraction, format_poly, fstr, poly_gcd
from .rational import SCALAR_TYPES, Rational


class ArithError(ValueError):
    pass


class NonRationalPoleError(ArithError):
    """A denominator factor has no rational root."""


class RatFunc:
    """Reduced fraction num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = Poly.promote(num)
        den = Poly.const(1) if den is None else Poly.promote(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            elif den.degree == 0:
                num = num * (1 / den.lead)
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num // g
                    den = den // g
                lc = den.lead
                num = num * (1 / lc)
                den = den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def promote(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(x)

    @classmethod
    def z(cls) -> "RatFunc":
        return cls(Poly.z())

    @classmethod
    def pole(cls, p: Scalar, order: int = 1) -> "RatFunc":
        """(z - p)^(-order)"""
        return cls(Poly.const(1), Poly.linear(p) ** order, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, SCALAR_TYPES + (Poly,)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatFunc":
        other = RatFunc.promote(other)
        # Henrici: only the common part of the denominators can cancel
        b, d = self.den, other.den
        g = poly_gcd(b, d)
        if g.degree == 0:
            return RatFunc(self.num * d + other.num * b, b * d, _reduced=True)
        b1, d1 = b // g, d // g
        num = self.num * d1 + other.num * b1
        if num.is_zero():
            return RatFunc(0)
        h = poly_gcd(num, g)
        if h.degree > 0:
            num = num // h
            g = g // h
        return RatFunc(num, b1 * d1 * g, _reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.promote(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.promote(other) - self

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, SCALAR_TYPES):
            if other == 0:
                return RatFunc(0)
            return RatFunc(self.num * Rational(other), self.den, _reduced=True)
        other = RatFunc.promote(other)
        if self.is_zero() or other.is_zero():
            return RatFunc(0)
        a, b, c, d = self.num, self.den, other.num, other.den
        g1, g2 = poly_gcd(a, d), poly_gcd(c, b)
        if g1.degree > 0:
            a, d = a // g1, d // g1
        if g2.degree > 0:
            c, b = c // g2, b // g2
        return RatFunc(a * c, b * d, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * RatFunc.promote(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.promote(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __call__(self, x: Scalar) -> Rational:
        """Plain substitution; raises at a pole."""
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole at z = %s" % fstr(as_fraction(x)))
        return self.num(x) / d

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        if d.degree == 0:
            return RatFunc(n.derivative(), _reduced=True)
        # with g = gcd(d, d'), d = g h, d' = g k: f' = (n' h - n k) / (g h^2),
        # already reduced since a root of order m in d gives a pole of order m + 1
        dd = d.derivative()
        g = poly_gcd(d, dd)
        h, k = d // g, dd // g
        return RatFunc(n.derivative() * h - n * k, g * h * h, _reduced=True)

    def __repr__(self):
        return "RatFunc(%r)" % str(self)

    def __str__(self):
        return format_ratfunc(self)


def format_ratfunc(f: RatFunc) -> str:
    """Serialize in the parser grammar; parse(format(f)) == f."""
    num = format_poly(f.num.coeffs)
    if f.is_poly():
        return num
    den = format_poly(f.den.coeffs)
    terms = sum(1 for c in f.num.coeffs if c != 0)
    if terms > 1 or f.num.lead < 0 or f.num.lead.denominator != 1:
        num = "(%s)" % num
    return "%s/(%s)" % (num, den)


def derivative(f: RatFunc) -> RatFunc:
    return f.derivative()


class RatForm:
    """The differential coeff * dz on the standard chart."""

    __slots__ = ("coeff",)

    def __init__(self, coeff):
        object.__setattr__(self, "coeff", RatFunc.promote(coeff))

    def __setattr__(self, name, value):
        raise AttributeError("RatForm is immutable")

    @classmethod
    def exact(cls, f: RatFunc) -> "RatForm":
        """df"""
        return cls(f.derivative())

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatForm):
            return NotImplemented
        return self.coeff == other.coeff

    def __hash__(self):
        return hash(("RatForm", self.coeff))

    def __add__(self, other: "RatForm") -> "RatForm":
        return RatForm(self.coeff + other.coeff)

    def __sub__(self, other: "RatForm") -> "RatForm":
        return RatForm(self.coeff - other.coeff)

    def __neg__(self) -> "RatForm":
        return RatForm(-self.coeff)

    def __mul__(self, c: Union[int, Rational, RatFunc]) -> "RatForm":
        return RatForm(self.coeff * c)

    __rmul__ = __mul__

    def __repr__(self):
        return "RatForm((%s) dz)" % self.coeff

    def __str__(self):
        return str(self.coeff)


def dlog(f: RatFunc) -> RatForm:
    """(f'/f) dz"""
    f = RatFunc.promote(f)
    if f.is_zero():
        raise ArithError("dlog of the zero function")
    return RatForm(f.derivative() / f)


def rational_roots(p: Poly) -> dict[Rational, int]:
    """Rational roots of p with multiplicity.

    Irrational factors are simply left out; callers compare the total
    multiplicity with the degree to detect them.
    """
    roots: dict[Rational, int] = {}
    if p.degree <= 0:
        return roots
    rest = p.monic()
    while rest.degree > 0 and rest[0] == 0:
        roots[Rational(0)] = roots.get(Rational(0), 0) + 1
        rest = rest // Poly.z()
    if rest.degree <= 0:
        return roots
    # distinct roots come from the square-free part, multiplicities from rest
    g = poly_gcd(rest, rest.derivative())
    sqfree = rest // g if g.degree > 0 else rest
    for cand in _squarefree_rational_roots(sqfree):
        lin = Poly.linear(cand)
        while rest.degree > 0:
            quo, rem = rest.divmod(lin)
            if not rem.is_zero():
                break
            roots[cand] = roots.get(cand, 0) + 1
            rest = quo
    return roots


def _squarefree_rational_roots(p: Poly) -> list[Rational]:
    _, ints = p.content_primitive()
    n = len(ints) - 1
    a0 = ints[0]
    bound = _root_bound(ints)
    found: list[Rational] = []
    for b in _divisors(abs(ints[-1])):
        bpow = [b ** k for k in range(n + 1)]
        for a in range(-bound * b, bound * b + 1):
            # a/b in lowest terms with a | a0 (a0 != 0: zero roots were removed)
            if a == 0 or a0 % a or gcd(a, b) != 1:
                continue
            acc = ints[n]
            for i in range(n - 1, -1, -1):
                acc = acc * a + ints[i] * bpow[n - i]
            if acc == 0:
                found.append(Rational(a, b))
                if len(found) == n:
                    return found
    return found


def _root_bound(ints: list[int]) -> int:
    """Integer R with every complex root of sum ints[i] z^i in |z| <= R (Fujiwara)."""
    n = len(ints) - 1
    an = abs(ints[-1])
    best = 1
    for k in range(1, n + 1):
        # Fujiwara: 2 * max |a_{n-k}/a_n|^(1/k), with a_0 halved
        a = abs(ints[n - k])
        scale = 2 if k == n else 1
        if a == 0:
            continue
        r = max(1, int(math.exp((math.log(a) - math.log(an * scale)) / k)))
        while r > 1 and (r - 1) ** k * an * scale >= a:
            r -= 1
        while r ** k * an * scale < a:
            r += 1
        best = max(best, r)
    return 2 * best


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factor_linear(p: Poly) -> dict[Rational, int]:
    """Full factorization into rational linear factors, or NonRationalPoleError."""
    roots = rational_roots(p)
    if sum(roots.values()) != max(p.degree, 0):
        raise NonRationalPoleError("non-rational pole: %s has an irreducible factor of degree >= 2 over Q" % format_poly(p.coeffs))
    return roots

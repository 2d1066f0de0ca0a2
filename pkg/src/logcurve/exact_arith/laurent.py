"""Laurent expansions at points of P^1, evaluation at poles, residues.

Every computation goes through a local coordinate ``s`` (``z - p`` at a
finite point, ``1/z`` at infinity) in which the function becomes
``s^k * A(s)/B(s)`` with ``A(0), B(0) != 0``; the tail ``A/B`` is then
produced by exact power-series division.  A non-trivial unit in the local
parameter ``t = unit * s`` is handled by peeling off one power of ``t`` at
a time, which never needs series reversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterator, Optional

from .poly import Poly, Scalar, as_fraction, fstr
from .ratfunc import RatForm, RatFunc, factor_linear
from .rational import Rational


@total_ordering
@dataclass(frozen=True)
class PointOnLine:
    """A rational point of P^1; ``value is None`` is the point at infinity."""

    value: Optional[Rational] = None

    @classmethod
    def finite(cls, p: Scalar) -> "PointOnLine":
        return cls(as_fraction(p))

    @classmethod
    def parse(cls, text: str) -> "PointOnLine":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo", "∞"):
            return INFINITY
        if any(ch in t for ch in ".eE"):
            raise ValueError("decimal point %r; use a fraction like \"1/2\"" % text)
        return cls.finite(t)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __str__(self):
        return "inf" if self.value is None else fstr(self.value)

    def __lt__(self, other):
        # finite points first, in numeric order, then infinity
        if not isinstance(other, PointOnLine):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value


INFINITY = PointOnLine(None)


def as_point(p) -> PointOnLine:
    if isinstance(p, PointOnLine):
        return p
    if isinstance(p, str):
        return PointOnLine.parse(p)
    return PointOnLine.finite(p)


def local_coordinate(p: PointOnLine) -> RatFunc:
    """The standard parameter s at p as a function of z."""
    if p.is_infinity:
        return RatFunc(1, Poly.z())
    return RatFunc(Poly.linear(p.value))


def valuation_at(f: RatFunc, p: PointOnLine) -> int:
    """Order of vanishing of f at p (negative at a pole)."""
    if f.is_zero():
        raise ValueError("valuation of the zero function")
    if p.is_infinity:
        return f.den.degree - f.num.degree
    return f.num.shift(p.value).valuation() - f.den.shift(p.value).valuation()


def regular_value(f: RatFunc, p: PointOnLine) -> Rational:
    """f(p) for f regular at p (including at infinity)."""
    if p.is_infinity:
        if f.num.degree > f.den.degree:
            raise ZeroDivisionError("pole at infinity")
        if f.num.degree < f.den.degree:
            return Rational(0)
        return f.num.lead / f.den.lead
    return f(p.value)


@dataclass(frozen=True)
class Uniformizer:
    """Local parameter t = unit * s, with s the standard coordinate at base."""

    base: PointOnLine
    unit: RatFunc = field(default_factory=lambda: RatFunc(1))

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        object.__setattr__(self, "unit", RatFunc.promote(self.unit))
        u = self.unit
        if u.is_zero() or valuation_at(u, self.base) != 0:
            raise ValueError("unit must be regular and nonzero at %s" % self.base)

    @classmethod
    def standard(cls, p) -> "Uniformizer":
        return cls(as_point(p))

    @property
    def is_standard(self) -> bool:
        return self.unit.den.degree == 0 and self.unit.num.coeffs == (1,)

    def parameter(self) -> RatFunc:
        return self.unit * local_coordinate(self.base)


def _in_local_coordinate(f: RatFunc, p: PointOnLine) -> tuple[int, Poly, Poly]:
    """Write f = s^k * A(s) / B(s) with A(0) != 0 != B(0)."""
    if p.is_infinity:
        # f(1/s) = s^(dd - dn) * rev(num)(s) / rev(den)(s)
        a = f.num.reverse()
        b = f.den.reverse()
        k = f.den.degree - f.num.degree
    else:
        a = f.num.shift(p.value)
        b = f.den.shift(p.value)
        k = 0
    va, vb = a.valuation(), b.valuation()
    a = Poly(a.coeffs[va:])
    b = Poly(b.coeffs[vb:])
    return k + va - vb, a, b


def series_quotient(a: Poly, b: Poly) -> Iterator[Rational]:
    """Coefficients of the power series a/b, b(0) != 0, generated on demand."""
    inv = 1 / b[0]
    out: list[Rational] = []
    n = 0
    while True:
        acc = a[n]
        for j in range(1, min(n, b.degree) + 1):
            acc -= b[j] * out[n - j]
        c = acc * inv
        out.append(c)
        yield c
        n += 1


def _series(f: RatFunc, p: PointOnLine, high: int) -> tuple[int, list[Rational]]:
    """(k, [c_k, ..., c_high]) with f = sum c_n s^n; empty if high < k."""
    k, a, b = _in_local_coordinate(f, p)
    gen = series_quotient(a, b)
    return k, [next(gen) for _ in range(high - k + 1)]


def _mul_trunc(x: list[Rational], y: list[Rational], n: int) -> list[Rational]:
    out = [Rational(0)] * n
    for i, a in enumerate(x[:n]):
        if a == 0:
            continue
        for j in range(min(len(y), n - i)):
            out[i + j] += a * y[j]
    return out


def _inv_trunc(x: list[Rational], n: int) -> list[Rational]:
    gen = series_quotient(Poly([1]), Poly(x[:n]))
    return [next(gen) for _ in range(n)]


@dataclass(frozen=True)
class LaurentPrefix:
    """Coefficients a_low..a_high of f in a uniformizer's parameter t.

    ``low`` is the exact valuation for nonzero f; the window is empty when
    ``high < low``.  For f = 0 the window is empty and ``low = high + 1``.
    """

    base: PointOnLine
    uniformizer: Uniformizer
    low: int
    coeffs: tuple[Rational, ...]
    high: int

    def coeff(self, n: int) -> Rational:
        if n > self.high:
            raise IndexError("coefficient a_%d beyond the computed window" % n)
        if n < self.low:
            return Rational(0)
        return self.coeffs[n - self.low]

    def to_ratfunc(self) -> RatFunc:
        """Re-sum the prefix as a rational function of z."""
        t = self.uniformizer.parameter()
        total = RatFunc(0)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                total = total + (t ** (self.low + i)) * c
        return total


def laurent_expand(f: RatFunc, u: Uniformizer, high: int) -> LaurentPrefix:
    f = RatFunc.promote(f)
    if f.is_zero():
        return LaurentPrefix(u.base, u, high + 1, (), high)
    k, cs = _series(f, u.base, high)
    if u.is_standard or not cs:
        return LaurentPrefix(u.base, u, k, tuple(cs), high)
    n = high - k + 1
    # unit as a power series in s, U(0) != 0
    _, ucs = _series(u.unit, u.base, n - 1)
    uinv = _inv_trunc(ucs, n)
    # tpow[j] = coefficient of s^(m + j) in t^m, starting at m = k
    tpow = [Rational(1)] + [Rational(0)] * (n - 1)
    step, m = (ucs, k) if k >= 0 else (uinv, -k)
    for _ in range(m):
        tpow = _mul_trunc(tpow, step, n)
    rem = list(cs)
    out = []
    for i in range(n):
        a = rem[i] / tpow[0]
        out.append(a)
        if a != 0:
            for j in range(i, n):
                rem[j] -= a * tpow[j - i]
        tpow = _mul_trunc(tpow, ucs, n)
    return LaurentPrefix(u.base, u, k, tuple(out), high)


def eval_eps(f: RatFunc, u: Uniformizer) -> Rational:
    """The constant term a_0 of f in u's parameter."""
    return laurent_expand(f, u, 0).coeff(0)


def local_expression(w: RatForm, u: Uniformizer) -> RatFunc:
    """g with w = g dt, as a function of z."""
    dt = u.parameter().derivative()
    return w.coeff / dt


def residue_at(w: RatForm, p, u: Optional[Uniformizer] = None) -> Rational:
    p = as_point(p)
    if u is None:
        u = Uniformizer.standard(p)
    elif u.base != p:
        raise ValueError("uniformizer based at %s, not %s" % (u.base, p))
    if w.is_zero():
        return Rational(0)
    if u.is_standard:
        if p.is_infinity:
            # g dz = -sum a_n t^(n-2) dt for t = 1/z
            return -laurent_expand(w.coeff, u, 1).coeff(1)
        return laurent_expand(w.coeff, u, -1).coeff(-1)
    g = local_expression(w, u)
    return laurent_expand(g, u, -1).coeff(-1)


def finite_poles(f: RatFunc) -> dict[Rational, int]:
    """Finite poles of f with orders; NonRationalPoleError if not all rational."""
    return factor_linear(f.den)


def residues_all(w: RatForm) -> dict[PointOnLine, Rational]:
    """Residues at every finite pole, plus infinity whenever there are finite poles."""
    poles = finite_poles(w.coeff)
    out = {PointOnLine(p): residue_at(w, PointOnLine(p)) for p in sorted(poles)}
    if out:
        out[INFINITY] = residue_at(w, INFINITY)
    return out

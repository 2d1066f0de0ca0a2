"""Polynomials, rational functions, parsing, Laurent expansion and residues."""

from fractions import Fraction

import pytest
import sympy

from conftest import Q
from logcurve.exact_arith import (
    INFINITY,
    ArithError,
    NonRationalPoleError,
    ParseError,
    PointOnLine,
    Poly,
    RatForm,
    RatFunc,
    Rational,
    Uniformizer,
    derivative,
    dlog,
    eval_eps,
    factor_linear,
    laurent_expand,
    parse_ratfunc,
    poly_gcd,
    residue_at,
    residues_all,
)

zs = sympy.Symbol("z")


def to_sympy(f: RatFunc):
    num = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * zs**i for i, c in enumerate(f.num.coeffs))
    den = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * zs**i for i, c in enumerate(f.den.coeffs))
    return num / den


def from_sympy(x) -> Rational:
    x = sympy.Rational(x)
    return Q(Fraction(int(x.p), int(x.q)))


# polynomials

def test_poly_canonical_form():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).is_zero()
    assert Poly([]).degree == -1
    assert Poly([3]).degree == 0


def test_poly_divmod_identity():
    a = Poly([Q("1/2"), -3, 0, 2, 5])
    b = Poly([1, Q("2/3"), 1])
    quo, rem = a.divmod(b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


def test_poly_gcd_is_monic():
    a = Poly.linear(1) * Poly.linear(2) * 3
    b = Poly.linear(2) * Poly.linear(5) * Q("-1/2")
    assert poly_gcd(a, b) == Poly.linear(2)


def test_taylor_shift():
    p = Poly([1, 0, 1])  # z^2 + 1
    assert p.shift(2) == Poly([5, 4, 1])  # (t+2)^2 + 1


def test_scalars_are_exact_rationals():
    x = parse_ratfunc("1/3")(0)
    assert x == Fraction(1, 3)
    assert x.denominator == 3


# parser

def test_parse_polynomial_literal():
    f = parse_ratfunc("z^2 - 1")
    assert f.num == Poly([-1, 0, 1]) and f.den == Poly([1])


def test_parse_common_denominator():
    f = parse_ratfunc("(z)/(z-1) + 1/(z-1)")
    assert f.num == Poly([1, 1])
    assert f.den == Poly([-1, 1])


def test_parse_division_by_zero():
    with pytest.raises(ParseError, match="division by zero"):
        parse_ratfunc("1/0")
    with pytest.raises(ParseError, match="division by zero"):
        parse_ratfunc("z/(z - z)")


@pytest.mark.parametrize("text,pos", [("1/(z^2+1", 8), ("z +* 2", 3), ("2 $ z", 2), ("", 0), ("z^-1", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_ratfunc(text)
    assert exc.value.pos == pos
    assert "position %d" % pos in str(exc.value)


def test_parse_precedence():
    assert parse_ratfunc("-z^2") == RatFunc(Poly([0, 0, -1]))
    assert parse_ratfunc("1/2/z") == RatFunc(Poly([Q("1/2")]), Poly([0, 1]))
    assert parse_ratfunc("2**3") == RatFunc(8)
    assert parse_ratfunc("−3/2") == RatFunc(Q("-3/2"))


@pytest.mark.parametrize("text", [
    "z/(z^2 - 1)", "(z^2 + 1)/(z - 2)", "-3/2", "(-z)/(z + 1)", "(3*z^2/2)/(z + 1)", "z^3 - z/7",
])
def test_serialization_round_trip(text):
    f = parse_ratfunc(text)
    assert parse_ratfunc(str(f)) == f
    assert str(parse_ratfunc(str(f))) == str(f)


# derivative

def test_derivative_examples():
    assert derivative(parse_ratfunc("z^2")) == parse_ratfunc("2*z")
    assert derivative(parse_ratfunc("1/(z-1)")) == parse_ratfunc("-1/(z-1)^2")
    d = derivative(parse_ratfunc("(z^2+1)/(z-2)"))
    assert d.num == Poly([-1, -4, 1])
    assert d.den == Poly.linear(2) ** 2


def test_derivative_against_sympy():
    f = parse_ratfunc("(3*z^3 - z/2 + 1)/((z-1)^2*(z+3))")
    expected = sympy.together(sympy.diff(to_sympy(f), zs))
    assert sympy.simplify(to_sympy(derivative(f)) - expected) == 0


# Laurent expansion

def test_laurent_geometric_series():
    pre = laurent_expand(parse_ratfunc("1/(1-z)"), Uniformizer.standard(0), 2)
    assert pre.low == 0
    assert list(pre.coeffs) == [1, 1, 1]


def test_laurent_at_infinity():
    pre = laurent_expand(parse_ratfunc("z"), Uniformizer.standard(INFINITY), 0)
    assert pre.low == -1
    assert list(pre.coeffs) == [1, 0]


def test_laurent_double_pole():
    pre = laurent_expand(parse_ratfunc("z/(z-1)^2"), Uniformizer.standard(1), 0)
    assert pre.low == -2
    assert list(pre.coeffs) == [1, 1, 0]


def test_laurent_against_sympy_series():
    f = parse_ratfunc("(z^3 + 2)/((z-2)^3*(z+1))")
    pre = laurent_expand(f, Uniformizer.standard(2), 4)
    t = sympy.Symbol("t")
    ser = sympy.series(to_sympy(f).subs(zs, 2 + t), t, 0, 5).removeO()
    for n in range(pre.low, 5):
        assert pre.coeff(n) == from_sympy(ser.coeff(t, n))


def test_laurent_zero_function():
    pre = laurent_expand(RatFunc(0), Uniformizer.standard(0), 3)
    assert list(pre.coeffs) == []
    assert pre.coeff(1) == 0


def test_laurent_nonstandard_unit():
    # t = 2(z - 1): z = 1 + t/2, so z^2 = 1 + t + t^2/4
    u = Uniformizer(PointOnLine.finite(1), RatFunc(2))
    pre = laurent_expand(parse_ratfunc("z^2"), u, 3)
    assert [pre.coeff(n) for n in range(4)] == [1, 1, Q("1/4"), 0]


def test_uniformizer_rejects_bad_unit():
    with pytest.raises(ValueError):
        Uniformizer(PointOnLine.finite(1), parse_ratfunc("z - 1"))


# evaluation at poles

def test_eval_eps_examples():
    assert eval_eps(parse_ratfunc("z^2+1"), Uniformizer.standard(2)) == 5
    assert eval_eps(parse_ratfunc("1/(z-2)"), Uniformizer.standard(2)) == 0
    assert eval_eps(parse_ratfunc("z/(z-1)"), Uniformizer.standard(1)) == 1


def test_eval_eps_depends_on_unit():
    # s = z - 1, t = z*s = s(1 + s), so 1/s = (1 + s)/t = 1/t + 1 + O(t)
    f = parse_ratfunc("1/(z-1)")
    u = Uniformizer(PointOnLine.finite(1), parse_ratfunc("z"))
    assert eval_eps(f, u) == 1
    assert eval_eps(f, Uniformizer.standard(1)) == 0


# residues

def test_residue_examples():
    assert residue_at(RatForm(parse_ratfunc("1/z")), 0) == 1
    assert residue_at(RatForm(parse_ratfunc("(z^2+1)/(z^2-1)")), 1) == 1
    assert residue_at(RatForm(parse_ratfunc("z/(z^2-1)")), INFINITY) == -1


@pytest.mark.parametrize("text,point", [
    ("(z^2+1)/(z^2-1)", 1), ("(z^2+1)/(z^2-1)", -1), ("1/(z^3*(z-2))", 0),
    ("(z^4 - 3)/((z-1)^3*(z+2)^2)", 1), ("(z^4 - 3)/((z-1)^3*(z+2)^2)", -2),
])
def test_residue_against_sympy(text, point):
    f = parse_ratfunc(text)
    assert residue_at(RatForm(f), point) == from_sympy(sympy.residue(to_sympy(f), zs, point))


def test_residue_at_infinity_against_sympy():
    f = parse_ratfunc("(z^4 - 3)/((z-1)^3*(z+2))")
    t = sympy.Symbol("t")
    expected = -sympy.residue(to_sympy(f).subs(zs, 1 / t) / t**2, t, 0)
    assert residue_at(RatForm(f), INFINITY) == from_sympy(expected)


def test_residues_all_examples():
    res = residues_all(RatForm(parse_ratfunc("1/(z*(z-1))")))
    assert res == {PointOnLine.finite(0): -1, PointOnLine.finite(1): 1, INFINITY: 0}
    assert residues_all(RatForm(parse_ratfunc("1"))) == {}
    with pytest.raises(NonRationalPoleError, match="non-rational pole"):
        residues_all(RatForm(parse_ratfunc("1/(z^2+1)")))


def test_residues_all_polynomial_part_gives_pole_at_infinity():
    res = residues_all(RatForm(parse_ratfunc("z^2 + 1/z")))
    assert res[INFINITY] == -1
    assert sum(res.values()) == 0


def test_factor_linear():
    assert factor_linear(Poly.linear(Q("1/2")) ** 2 * Poly.linear(-3)) == {Q("1/2"): 2, Q(-3): 1}
    with pytest.raises(NonRationalPoleError):
        factor_linear(Poly([2, 0, 1]) * Poly.linear(1))


# dlog

def test_dlog_examples():
    assert dlog(parse_ratfunc("z")) == RatForm(parse_ratfunc("1/z"))
    a, b = 2, -3
    f = parse_ratfunc("(z-%d)/(z-%d)" % (a, b))
    expected = RatForm(parse_ratfunc("1/(z-%d) - 1/(z-%d)" % (a, b)))
    assert dlog(f) == expected
    assert dlog(f).coeff == RatFunc(Poly([a - b]), Poly.linear(a) * Poly.linear(b))
    assert dlog(RatFunc(5)).is_zero()


def test_dlog_of_zero_fails():
    with pytest.raises(ArithError):
        dlog(RatFunc(0))

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from logcurve.exact_arith import Poly, RatFunc, Rational

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def Q(x) -> Rational:
    return Rational(Fraction(x))


small_rationals = st.builds(
    lambda n, d: Q(Fraction(n, d)),
    st.integers(-6, 6), st.integers(1, 4),
)
points = st.builds(Q, st.integers(-4, 4))


@st.composite
def polys(draw, max_degree=3, nonzero=False):
    cs = draw(st.lists(small_rationals, min_size=0, max_size=max_degree + 1))
    p = Poly(cs)
    if nonzero and p.is_zero():
        p = Poly.const(draw(st.sampled_from([1, -1, 2])))
    return p


@st.composite
def split_ratfuncs(draw, max_poles=3, allow_zero=True):
    """Rational functions whose denominator splits over Q (integer poles)."""
    num = draw(polys(max_degree=4, nonzero=not allow_zero))
    den = Poly.const(1)
    for _ in range(draw(st.integers(0, max_poles))):
        den = den * Poly.linear(draw(points))
    return RatFunc(num, den)


@st.composite
def units_at(draw, p):
    """A rational function regular and nonzero at p."""
    while True:
        num = draw(polys(max_degree=2, nonzero=True))
        den = draw(polys(max_degree=2, nonzero=True))
        if num(p) != 0 and den(p) != 0:
            return RatFunc(num, den)


@pytest.fixture
def q():
    return Q

"""Exact scalar, polynomial and rational-function arithmetic over Q."""

from .laurent import (
    INFINITY,
    LaurentPrefix,
    PointOnLine,
    Uniformizer,
    as_point,
    eval_eps,
    finite_poles,
    laurent_expand,
    local_expression,
    regular_value,
    residue_at,
    residues_all,
    valuation_at,
)
from .parser import ParseError, parse_ratfunc
from .poly import Poly, as_fraction, fstr, poly_gcd
from .rational import Rational
from .ratfunc import (
    ArithError,
    NonRationalPoleError,
    RatForm,
    RatFunc,
    derivative,
    dlog,
    factor_linear,
    format_ratfunc,
    rational_roots,
)

__all__ = [
    "ArithError",
    "INFINITY",
    "LaurentPrefix",
    "NonRationalPoleError",
    "ParseError",
    "PointOnLine",
    "Poly",
    "RatForm",
    "RatFunc",
    "Rational",
    "Uniformizer",
    "as_fraction",
    "as_point",
    "derivative",
    "dlog",
    "eval_eps",
    "factor_linear",
    "finite_poles",
    "format_ratfunc",
    "fstr",
    "laurent_expand",
    "local_expression",
    "parse_ratfunc",
    "poly_gcd",
    "rational_roots",
    "regular_value",
    "residue_at",
    "residues_all",
    "valuation_at",
]

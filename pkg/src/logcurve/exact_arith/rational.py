"""The exact rational scalar type.

gmpy2's mpq is used when available; it is a registered numbers.Rational,
hashes and compares like fractions.Fraction, and is several times faster.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    Rational = Fraction

SCALAR_TYPES = (int, Fraction, type(Rational(0)))

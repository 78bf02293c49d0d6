"""Exact arithmetic: rationals, multivariate polynomials, resultants, truncated series."""

from fractions import Fraction as Rational

from .linalg import rational_nullspace
from .polynomial import CANONICAL_VARS, MultiPoly, divide_exact, exact_divide, poly_arith
from .resultant import content, discriminant, poly_gcd, primitive_part, pseudo_remainder, resultant
from .series import TruncatedSeries, series_arith, series_geometric_inverse, series_of_poly

__all__ = [
    "Rational",
    "CANONICAL_VARS",
    "MultiPoly",
    "divide_exact",
    "exact_divide",
    "poly_arith",
    "content",
    "discriminant",
    "poly_gcd",
    "primitive_part",
    "pseudo_remainder",
    "resultant",
    "TruncatedSeries",
    "rational_nullspace",
    "series_arith",
    "series_geometric_inverse",
    "series_of_poly",
]

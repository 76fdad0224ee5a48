"""Exact scalar tower: Q (``Fraction``), polynomials, and rational functions."""

from fractions import Fraction

from .literal import format_scalar, parse_scalar
from .poly import T, Poly, divexact, gcd, poly_eval
from .ratfunc import RatFunc, limit_at_zero, normalize, simplify

Rational = Fraction
Scalar = "Fraction | RatFunc"


def scalar_vars(x) -> tuple:
    """Variable names a scalar depends on."""
    if isinstance(x, RatFunc):
        return x.vars
    if isinstance(x, Poly):
        return x.vars
    return ()


__all__ = [
    "Fraction",
    "Poly",
    "RatFunc",
    "Rational",
    "T",
    "divexact",
    "format_scalar",
    "gcd",
    "limit_at_zero",
    "normalize",
    "parse_scalar",
    "poly_eval",
    "scalar_vars",
    "simplify",
]

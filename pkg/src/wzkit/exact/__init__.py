"""Exact arithmetic kernel."""
from fractions import Fraction

from .algebra import (
    LinearSolution,
    PolyCore,
    integer_roots,
    integer_roots_qq,
    interpolate,
    poly_core,
    resultant,
    solve_linear,
)
from .poly import QQ, QQn, FunctionField, Poly, RatFunc, format_poly, function_field, poly_gcd, ratfunc, sum_is_zero

Rational = Fraction

__all__ = [
    "Fraction", "Rational", "QQ", "QQn", "FunctionField", "Poly", "RatFunc", "format_poly",
    "function_field", "poly_gcd", "ratfunc", "sum_is_zero", "LinearSolution", "PolyCore", "integer_roots",
    "integer_roots_qq", "interpolate", "poly_core", "resultant", "solve_linear",
]

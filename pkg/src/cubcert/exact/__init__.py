"""Exact scalar, polynomial, number-field and interval arithmetic."""

from fractions import Fraction

from .field import FieldElement, NumberField, field_is_rational, field_reduce
from .interval import IntervalRat, interval_contains_integer
from .poly import (
    Poly,
    even_part,
    exact_div,
    integer_content_form,
    isolate_real_roots,
    poly_divrem,
    poly_gcd,
    poly_sqrt,
    poly_xgcd,
    rational_roots_in,
    squarefree_part,
    sturm_count,
)
from .ratfunc import RatFunc

Rational = Fraction

__all__ = [
    "FieldElement",
    "Fraction",
    "IntervalRat",
    "NumberField",
    "Poly",
    "RatFunc",
    "Rational",
    "even_part",
    "exact_div",
    "field_is_rational",
    "field_reduce",
    "integer_content_form",
    "interval_contains_integer",
    "isolate_real_roots",
    "poly_divrem",
    "poly_gcd",
    "poly_sqrt",
    "poly_xgcd",
    "rational_roots_in",
    "squarefree_part",
    "sturm_count",
]

"""Exact arithmetic substrate.

Finite fields, dense polynomials with factorization, rational functions,
Laurent polynomials and differential forms with the Cartier operator.
"""

from src.algebra.finite_field import FiniteField, FiniteFieldElement, common_field, embed_element
from src.algebra.forms import FormClass, Mobius, RationalDifferentialForm, cartier, classify_form, order_at
from src.algebra.laurent import LaurentPoly
from src.algebra.polynomial import Poly
from src.algebra.rational import INFINITY, Point, RationalFunction, parse_rational_function, point_sort_key

__all__ = [
    "FiniteField",
    "FiniteFieldElement",
    "common_field",
    "embed_element",
    "Poly",
    "RationalFunction",
    "parse_rational_function",
    "INFINITY",
    "Point",
    "point_sort_key",
    "LaurentPoly",
    "Mobius",
    "RationalDifferentialForm",
    "FormClass",
    "cartier",
    "classify_form",
    "order_at",
]

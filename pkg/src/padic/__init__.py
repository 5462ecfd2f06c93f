"""Truncated p-adic arithmetic.

Eisenstein extensions of the Witt vectors with precision tracking, valued
Laurent polynomials in T^{-1}, Newton polygons and the root certificate.
"""

from src.padic.certificate import CERTIFIED, RootCertificate, roots_simple_distinct_certificate
from src.padic.laurent import (
    SymbolicCoefficient,
    ValuedLaurentPoly,
    coefficient_residue,
    coefficient_valuation,
    exp_truncated,
    laurent_from_json,
)
from src.padic.newton import NewtonPolygon, Segment, newton_polygon, residual_polynomial
from src.padic.ring import (
    CyclotomicRing,
    EisensteinRing,
    PadicElement,
    element_from_digits,
    make_cyclotomic_ring,
    make_eisenstein_ring,
    ring_from_json,
)

__all__ = [
    "EisensteinRing",
    "CyclotomicRing",
    "PadicElement",
    "make_eisenstein_ring",
    "make_cyclotomic_ring",
    "ring_from_json",
    "element_from_digits",
    "exp_truncated",
    "ValuedLaurentPoly",
    "laurent_from_json",
    "SymbolicCoefficient",
    "coefficient_valuation",
    "coefficient_residue",
    "NewtonPolygon",
    "Segment",
    "newton_polygon",
    "residual_polynomial",
    "RootCertificate",
    "CERTIFIED",
    "roots_simple_distinct_certificate",
]

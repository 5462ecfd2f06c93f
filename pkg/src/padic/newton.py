"""Newton polygons of valued Laurent polynomials in T^{-1}."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from src.algebra.finite_field import FiniteField
from src.algebra.polynomial import Poly
from src.padic.laurent import ValuedLaurentPoly, coefficient_residue
from src.utils.errors import ValidationError
from src.utils.rationals import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Segment:
    """One edge of the lower convex hull.

    Attributes:
        start: Exponent of T^{-1} at the left end
        end: Exponent of T^{-1} at the right end
        slope: Rise over run of the valuations; roots on this edge have v(T) = slope
    """

    start: int
    end: int
    slope: Fraction

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def root_valuation(self) -> Fraction:
        """Valuation of T at the roots counted by this segment."""
        return self.slope

    def to_dict(self) -> dict:
        return {"slope": format_rational(self.slope), "length": self.length, "start": self.start, "end": self.end}


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points (k, v(a_k)).

    Attributes:
        segments: Edges with strictly increasing slopes
        zero_multiplicity: Lowest exponent present; the number of roots at T^{-1} = 0
        degree: Degree in T^{-1}
        degenerate: True for a monomial, which has no segment at all
    """

    segments: tuple[Segment, ...]
    zero_multiplicity: int
    degree: int
    degenerate: bool = field(default=False)

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        """[(v(T), count)] over the nonzero roots in T^{-1}."""
        return [(s.root_valuation, s.length) for s in self.segments]

    def roots_in_open_disc(self) -> int:
        return sum(s.length for s in self.segments if s.root_valuation > 0)

    def roots_with_valuation_above(self, r: Fraction) -> int:
        return sum(s.length for s in self.segments if s.root_valuation > r)

    def to_dict(self) -> dict:
        return {
            "segments": [s.to_dict() for s in self.segments],
            "zero_multiplicity": self.zero_multiplicity,
            "degree": self.degree,
            "degenerate": self.degenerate,
        }


def _cross(o: tuple[int, Fraction], a: tuple[int, Fraction], b: tuple[int, Fraction]) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: ValuedLaurentPoly) -> NewtonPolygon:
    """Newton polygon of f viewed as a polynomial in X = T^{-1}.

    A segment of slope s and length l carries l roots X with v(X) = -s, that is
    l roots with v(T) = s. Collinear interior points are dropped.

    Raises:
        ValidationError: If f is zero
    """
    if f.is_zero():
        raise ValidationError("Newton polygon of the zero polynomial")
    points = sorted(f.valuations().items())
    hull: list[tuple[int, Fraction]] = []
    for point in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    segments = tuple(
        Segment(start=a[0], end=b[0], slope=Fraction(b[1] - a[1], b[0] - a[0])) for a, b in zip(hull, hull[1:])
    )
    polygon = NewtonPolygon(
        segments=segments,
        zero_multiplicity=points[0][0],
        degree=points[-1][0],
        degenerate=not segments,
    )
    if polygon.degenerate:
        logger.debug("Newton polygon of a monomial has no segment")
    return polygon


def residual_polynomial(f: ValuedLaurentPoly, segment: Segment) -> Optional[Poly]:
    """Residual polynomial of f along a segment, over the residue field.

    With e * slope = a / b in lowest terms, the points of the segment sit at
    exponents start + j b; the j-th coefficient is the unit residue of the
    coefficient there when it lies on the edge, and zero otherwise.

    Returns:
        Poly of degree length / b, or None when a residue on the edge is unknown
    """
    ring = f.ring
    scaled = segment.slope * ring.e
    b = scaled.denominator
    residue_field: FiniteField = ring.residue_field
    valuations = f.valuations()
    start_value = valuations[segment.start]
    coeffs = []
    for j in range(segment.length // b + 1):
        k = segment.start + j * b
        c = f.coefficient(k)
        if c is None or valuations[k] != start_value + (k - segment.start) * segment.slope:
            coeffs.append(residue_field.zero)
            continue
        residue = coefficient_residue(c)
        if residue is None:
            return None
        coeffs.append(residue)
    return Poly(residue_field, coeffs)

"""Sufficient criteria for simple, pairwise distinct roots in the open disc."""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from src.algebra.polynomial import Poly
from src.padic.laurent import ValuedLaurentPoly
from src.padic.newton import NewtonPolygon, Segment, newton_polygon, residual_polynomial
from src.utils.errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootCertificate:
    """Outcome of the simplicity and distinctness check.

    Attributes:
        certified: True when every root is simple and no two inputs share a root
        reason: Why certification failed; None when certified
        failing_pair: Indices of the offending inputs (i, i) for a simplicity failure
    """

    certified: bool
    reason: Optional[str] = None
    failing_pair: Optional[tuple[int, int]] = None

    def to_dict(self) -> dict:
        return {
            "certified": self.certified,
            "reason": self.reason,
            "failing_pair": None if self.failing_pair is None else list(self.failing_pair),
        }


CERTIFIED = RootCertificate(True)


def _uncertified(reason: str, pair: tuple[int, int]) -> RootCertificate:
    logger.info(f"Root certificate refused: {reason} (inputs {pair})")
    return RootCertificate(False, reason, pair)


def _segment_key(f: ValuedLaurentPoly, segment: Segment) -> tuple:
    scaled = segment.slope * f.ring.e
    return scaled.numerator, scaled.denominator


def roots_simple_distinct_certificate(polys: Sequence[ValuedLaurentPoly]) -> RootCertificate:
    """Certify that the disc roots of all inputs are simple and pairwise distinct.

    Each input must be normalized: unit constant term, positive valuation
    elsewhere. A binomial a_0 + a_u T^{-u} always has u distinct roots. Otherwise
    every segment's residual polynomial must be squarefree. Two inputs can only
    share a root on segments of equal slope; they are kept apart when the
    residual polynomials there are coprime.

    Raises:
        ValidationError: If an input is not normalized
    """
    for index, f in enumerate(polys):
        if not f.is_normalized():
            raise ValidationError(
                "Polynomial is not normalized: need v(a_0) = 0 and v(a_j) > 0",
                context={"index": index},
            )

    polygons: list[NewtonPolygon] = [newton_polygon(f) for f in polys]
    residuals: list[dict[tuple, Poly]] = []

    for index, (f, polygon) in enumerate(zip(polys, polygons)):
        per_segment: dict[tuple, Poly] = {}
        for segment in polygon.segments:
            residual = residual_polynomial(f, segment)
            if residual is None:
                return _uncertified("unknown residue on a Newton segment", (index, index))
            per_segment[_segment_key(f, segment)] = residual
        binomial = len(f.terms) == 2
        if not binomial and not all(r.is_squarefree() for r in per_segment.values()):
            return _uncertified("residual polynomial is not squarefree", (index, index))
        residuals.append(per_segment)

    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            for key in residuals[i].keys() & residuals[j].keys():
                if residuals[i][key].gcd(residuals[j][key]).degree > 0:
                    return _uncertified("shared roots", (i, j))
    logger.debug(f"Certified simple distinct roots for {len(polys)} polynomial(s)")
    return CERTIFIED

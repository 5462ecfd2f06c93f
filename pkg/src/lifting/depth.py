"""Depth of Z/p-covers y^p = f over discs, depth profiles and deformation data.

For a radius r >= 0 the cover is restricted to the disc v(T) >= r and looked at
over the generic point of its special fiber, where the Gauss valuation
val_r(sum a_k T^{-k}) = min v(a_k) - k r applies. Writing f = g^p (1 + D) with
w = val_r(D) as large as possible (capped at p/(p-1)), the depth is p/(p-1) - w:
0 for etale reduction, p/(p-1) for multiplicative reduction, in between for
additive reduction.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from src.algebra import FiniteFieldElement, FormClass, LaurentPoly, RationalDifferentialForm, classify_form
from src.lifting.kummer import KummerChain
from src.padic import ValuedLaurentPoly, newton_polygon
from src.utils.errors import DepthError, ValidationError
from src.utils.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)


class Reduction(str, Enum):
    """Type of the special fiber of a Z/p-cover at a radius."""

    ETALE = "etale"
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class _Peeled:
    w: Fraction
    kind: Reduction
    residual: dict[int, FiniteFieldElement]


def depth_cap(p: int) -> Fraction:
    return Fraction(p, p - 1)


def _radius(r: Any) -> Fraction:
    value = parse_rational(r)
    if value < 0:
        raise ValidationError(f"Radius must be nonnegative, got {value}")
    return value


def _drop_above(f: ValuedLaurentPoly, r: Fraction, cap: Fraction) -> ValuedLaurentPoly:
    """Discard the terms with val_r >= cap; they never affect a capped depth."""
    return ValuedLaurentPoly(f.ring, {k: c for k, c in f.items() if c.valuation() - k * r < cap})


def _geometric_inverse(excess: ValuedLaurentPoly, r: Fraction, cap: Fraction, terms: int) -> ValuedLaurentPoly:
    """sum_{m <= terms} (-excess)^m, truncated at val_r >= cap."""
    ring = excess.ring
    total = ValuedLaurentPoly(ring, {0: ring.one})
    power = total
    for _ in range(terms):
        power = _drop_above(power * (-excess), r, cap)
        if power.is_zero():
            break
        total = total + power
    return total


def _peel(f: ValuedLaurentPoly, r: Fraction) -> _Peeled:
    """Maximize val_r(f g^{-p} - 1) by absorbing p-th powers.

    Raises:
        DepthError: If f is zero or symbolic, if its reduction is a nonconstant
            p-th power, or if a peel needs a ramified coefficient extension
    """
    if f.is_zero():
        raise DepthError("Depth of the zero function")
    if f.is_symbolic:
        raise DepthError("Depth needs exact coefficients")
    ring = f.ring
    p = ring.p
    cap = depth_cap(p)

    dominant = f.dominant_exponents(r)
    if any(k % p for k in dominant):
        residual = {k: f.coefficient(k).unit_residue() for k in dominant}
        return _Peeled(Fraction(0), Reduction.MULTIPLICATIVE, residual)
    if dominant != [0]:
        raise DepthError(
            "Reduction is a nonconstant p-th power; no polynomial adjustment applies",
            context={"radius": format_rational(r), "dominant": dominant},
        )

    a0 = f.coefficient(0)
    deviation = _drop_above(ValuedLaurentPoly(ring, {k: a / a0 for k, a in f.items() if k}), r, cap)
    limit = (f.degree + 1) * ring.e * ring.precision
    for _ in range(limit):
        if deviation.is_zero():
            return _Peeled(cap, Reduction.ETALE, {})
        w = deviation.val_at_radius(r)
        dominant = deviation.dominant_exponents(r)
        residual = {k: deviation.coefficient(k).unit_residue() for k in dominant}
        if any(k % p for k in dominant):
            return _Peeled(w, Reduction.ADDITIVE, residual)

        roots = {}
        for k in dominant:
            digits = deviation.coefficient(k).valuation() * ring.e
            if digits % p:
                raise DepthError(
                    "Peeling needs a ramified extension of the coefficient ring",
                    context={"exponent": k, "valuation": format_rational(digits / ring.e)},
                )
            roots[k // p] = ring.lift(residual[k].pth_root()) * ring.pi_power(int(digits) // p)
        g = ValuedLaurentPoly(ring, {0: ring.one, **roots})
        inverse = _geometric_inverse(g**p - 1, r, cap, math.ceil(cap / w))
        adjusted = _drop_above((1 + deviation) * inverse, r, cap)
        constant = adjusted.coefficient(0)
        deviation = _drop_above(adjusted * constant.inverse() - 1, r, cap)
        logger.debug(f"Peeled p-th power at val_r={w}, radius {r}")
    raise DepthError("Peeling did not terminate at working precision")  # pragma: no cover


def zp_depth(f: ValuedLaurentPoly, r: Any = 0) -> Fraction:
    """Depth of y^p = f on the disc v(T) >= r.

    Args:
        f: Polynomial in T^{-1} with exact coefficients
        r: Radius as a nonnegative rational

    Returns:
        Fraction in [0, p/(p-1)]

    Raises:
        ValidationError: If r is negative
        DepthError: Outside the supported regime (see _peel)

    Examples:
        >>> ring = make_cyclotomic_ring(3, 1)
        >>> zp_depth(ValuedLaurentPoly(ring, {0: 1, 2: ring.lam**3}), Fraction(1, 8))
        Fraction(1, 4)
    """
    radius = _radius(r)
    peeled = _peel(f, radius)
    return max(Fraction(0), depth_cap(f.ring.p) - peeled.w)


def reduction_type(f: ValuedLaurentPoly, r: Any = 0) -> Reduction:
    return _peel(f, _radius(r)).kind


@dataclass(frozen=True)
class DepthProfile:
    """Depths sampled along increasing radii with the slope check.

    Attributes:
        p: Residue characteristic
        samples: ((radius, depth), ...)
        slopes: Chord slopes between consecutive samples
        bounds: nu(r) - 1 at the left end of each chord, floored at 0
        holds: True if every slope is at most its bound
    """

    p: int
    samples: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[Fraction, ...]
    bounds: tuple[int, ...]
    holds: bool

    def __post_init__(self):
        cap = depth_cap(self.p)
        if any(not 0 <= depth <= cap for _, depth in self.samples):
            raise DepthError(f"Depths must lie in [0, {cap}]")

    def to_json(self) -> dict:
        return {
            "samples": [[format_rational(r), format_rational(d)] for r, d in self.samples],
            "slopes": [format_rational(s) for s in self.slopes],
            "bounds": list(self.bounds),
            "holds": self.holds,
        }


def branch_points_above(f: ValuedLaurentPoly, r: Fraction) -> int:
    """nu(r): zeros of f with v(T) > r, plus the pole T = 0 when it is branched."""
    count = newton_polygon(f).roots_with_valuation_above(r)
    degree = f.degree
    if degree > 0 and degree % f.ring.p:
        count += 1
    return count


def depth_profile_check(f: ValuedLaurentPoly, radii: Sequence[Any]) -> DepthProfile:
    """Sample zp_depth and compare its slopes with nu(r) - 1.

    The right derivative of the depth at r is at most nu(r) - 1, and nu only
    decreases as r grows, so every chord slope obeys the bound at its left end.
    This validates samples; it proves nothing between them.

    Raises:
        ValidationError: If the radii are empty, negative or not strictly increasing
    """
    values = [_radius(r) for r in radii]
    if not values:
        raise ValidationError("At least one radius is required")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValidationError("Radii must be strictly increasing")
    samples = tuple((r, zp_depth(f, r)) for r in values)
    slopes = tuple((d2 - d1) / (r2 - r1) for (r1, d1), (r2, d2) in zip(samples, samples[1:]))
    bounds = tuple(max(branch_points_above(f, r) - 1, 0) for r in values[:-1])
    holds = all(s <= b for s, b in zip(slopes, bounds))
    if not holds:
        logger.warning(f"Depth slopes {slopes} exceed the bounds {bounds}")
    return DepthProfile(f.ring.p, samples, slopes, bounds, holds)


def _deviation_valuation(h: ValuedLaurentPoly, r: Fraction) -> float | Fraction:
    """val_r(h / a_0 - 1), infinite for a constant h."""
    valuations = h.valuations()
    base = valuations.get(0)
    if base is None:
        return Fraction(0)
    rest = [v - base - k * r for k, v in valuations.items() if k]
    return min(rest) if rest else math.inf


def chain_depth(chain: KummerChain, r: Any = 0) -> Fraction:
    """Depth of a Z/p^n chain: sum_{i<n} delta_i + p/(p-1) delta_n.

    Here delta_i = (p-1)/p times the depth of step i. Step i is the Kummer
    cover Z_i^p = Z_{i-1} H_i, which only reduces to the base-disc function
    H_i when Z_{i-1} is 1 to within p/(p-1). Its distance from 1 is tracked
    from the lower H_j; a step where this fails is refused.

    Raises:
        DepthError: If a lower level is not close enough to 1, or a step is
            outside the zp_depth regime
    """
    radius = _radius(r)
    p = chain.p
    cap = depth_cap(p)
    total = Fraction(0)
    closeness: float | Fraction = math.inf
    for i, h in enumerate(chain.polys, start=1):
        if closeness < cap:
            raise DepthError(
                f"Z_{i - 1} is not a unit times a p-th power at this radius",
                context={"radius": format_rational(radius), "step": i},
            )
        depth = zp_depth(h, radius)
        total += depth if i == chain.n else depth * Fraction(p - 1, p)
        combined = min(closeness, _deviation_valuation(h, radius))
        closeness = combined - 1 if combined > cap else combined / p
    logger.debug(f"Chain depth {total} at radius {radius}")
    return total


@dataclass(frozen=True)
class DeformationDatum:
    """Residual differential form of a Z/p-cover with positive depth.

    Attributes:
        kind: MULTIPLICATIVE (form du/u) or ADDITIVE (form du)
        depth: Depth at the radius
        form: The form in the disc coordinate
        form_class: Its Cartier classification
    """

    kind: Reduction
    depth: Fraction
    form: RationalDifferentialForm
    form_class: FormClass

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "depth": format_rational(self.depth),
            "form": self.form.to_string(),
            "class": self.form_class.value,
        }


def deformation_datum(f: ValuedLaurentPoly, r: Any = 0) -> DeformationDatum:
    """du/u (multiplicative) or du (additive) for the reduction u of the cover.

    Raises:
        DepthError: If the depth is 0 or f is outside the zp_depth regime
    """
    radius = _radius(r)
    peeled = _peel(f, radius)
    if peeled.kind is Reduction.ETALE:
        raise DepthError("Deformation data need positive depth", context={"radius": format_rational(radius)})
    field = f.ring.residue_field
    reduction = LaurentPoly(field, {-k: c for k, c in peeled.residual.items()}, var="u").to_rational_function()
    if peeled.kind is Reduction.MULTIPLICATIVE:
        form = RationalDifferentialForm.logarithmic(reduction)
    else:
        form = RationalDifferentialForm.exact(reduction)
    depth = depth_cap(field.p) - peeled.w
    return DeformationDatum(peeled.kind, depth, form, classify_form(form))

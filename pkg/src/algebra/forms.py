"""Meromorphic differential forms f(z) dz on the projective line over F_{p^r}.

Includes the Cartier operator, the logarithmic/exact classification, orders
and residues at points, full divisors over a splitting field, and pullback by
fractional linear maps.
"""

import logging
import math
from enum import Enum
from typing import Union

from src import config
from src.algebra.finite_field import FiniteField, FiniteFieldElement, common_field
from src.algebra.polynomial import Poly
from src.algebra.rational import INFINITY, Point, RationalFunction, point_sort_key
from src.utils.errors import FieldError, ZeroFormError

logger = logging.getLogger(__name__)


class FormClass(Enum):
    """Behaviour of a form under the Cartier operator."""

    LOGARITHMIC = "logarithmic"
    EXACT = "exact"
    NEITHER = "neither"


class Mobius:
    """Fractional linear map z -> (a z + b) / (c z + d) with ad - bc != 0."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, field: FiniteField | None = None):
        values = (a, b, c, d)
        if field is None:
            field = next((v.field for v in values if isinstance(v, FiniteFieldElement)), None)
        if field is None:
            raise FieldError("Mobius map needs a field when all entries are integers")
        self.a, self.b, self.c, self.d = (field(v) for v in values)
        if not self.determinant:
            raise FieldError("Degenerate Mobius map", context={"entries": [str(v) for v in self.entries]})

    @classmethod
    def identity(cls, field: FiniteField) -> "Mobius":
        return cls(1, 0, 0, 1, field)

    @classmethod
    def scaling(cls, zeta: FiniteFieldElement) -> "Mobius":
        """z -> zeta z"""
        return cls(zeta, 0, 0, 1, zeta.field)

    @property
    def field(self) -> FiniteField:
        return self.a.field

    @property
    def entries(self) -> tuple[FiniteFieldElement, ...]:
        return (self.a, self.b, self.c, self.d)

    @property
    def determinant(self) -> FiniteFieldElement:
        return self.a * self.d - self.b * self.c

    def apply(self, point: Point) -> Point:
        if point is INFINITY:
            return self.a / self.c if self.c else INFINITY
        point = self.field(point) if point.field is not self.field else point
        denominator = self.c * point + self.d
        if not denominator:
            return INFINITY
        return (self.a * point + self.b) / denominator

    __call__ = apply

    def compose(self, inner: "Mobius") -> "Mobius":
        """Return self o inner."""
        a, b, c, d = self.entries
        e, f, g, h = inner.entries
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def power(self, k: int) -> "Mobius":
        if k < 0:
            return self.inverse().power(-k)
        result = Mobius.identity(self.field)
        for _ in range(k):
            result = self.compose(result)
        return result

    def map_to(self, field: FiniteField) -> "Mobius":
        return Mobius(*(field(v) for v in self.entries), field=field)

    def derivative_at(self, point: Point) -> FiniteFieldElement:
        """Derivative in the standard local parameters at point and its image.

        The parameter at a finite point x is z - x and at infinity it is 1/z.
        """
        a, b, c, d = self.entries
        if point is INFINITY:
            if not c:
                return d / a
            # w -> (a + b w)/(c + d w), image a/c finite
            return (b * c - a * d) / (c * c)
        point = self.field(point) if point.field is not self.field else point
        denominator = c * point + d
        if not denominator:
            # parameter at the image is 1/phi = (c z + d)/(a z + b)
            return c / (a * point + b)
        return self.determinant / (denominator * denominator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mobius):
            return NotImplemented
        # Projective equality: proportional matrices
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return a * f == b * e and a * g == c * e and a * h == d * e and b * g == c * f and b * h == d * f and c * h == d * g

    def __hash__(self) -> int:
        return hash(self.field.order)

    def to_json(self) -> list:
        return [v.to_json() for v in self.entries]

    def __repr__(self) -> str:
        return f"Mobius({', '.join(str(v) for v in self.entries)})"


class RationalDifferentialForm:
    """The form f(z) dz with f a rational function in normal form.

    Attributes:
        f: Coefficient rational function
    """

    __slots__ = ("f",)

    def __init__(self, f: Union[RationalFunction, Poly]):
        if isinstance(f, Poly):
            f = RationalFunction(f)
        self.f = f

    @classmethod
    def exact(cls, g: RationalFunction) -> "RationalDifferentialForm":
        """dg"""
        return cls(g.derivative())

    @classmethod
    def logarithmic(cls, g: RationalFunction) -> "RationalDifferentialForm":
        """dg/g"""
        if g.is_zero():
            raise ZeroFormError("dlog of the zero function")
        return cls(g.derivative() / g)

    @property
    def field(self) -> FiniteField:
        return self.f.field

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def __add__(self, other: "RationalDifferentialForm") -> "RationalDifferentialForm":
        return RationalDifferentialForm(self.f + other.f)

    def __sub__(self, other: "RationalDifferentialForm") -> "RationalDifferentialForm":
        return RationalDifferentialForm(self.f - other.f)

    def __neg__(self) -> "RationalDifferentialForm":
        return RationalDifferentialForm(-self.f)

    def __mul__(self, other) -> "RationalDifferentialForm":
        """Multiply by a function or scalar."""
        return RationalDifferentialForm(self.f * other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalDifferentialForm):
            return self.f == other.f
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.f)

    def map_to(self, field: FiniteField) -> "RationalDifferentialForm":
        return RationalDifferentialForm(self.f.map_to(field))

    def to_string(self) -> str:
        if self.is_zero():
            return "0"
        return f"({self.f.to_string()}) dz"

    def __repr__(self) -> str:
        return f"RationalDifferentialForm({self.to_string()!r})"

    # Cartier operator

    def cartier(self) -> "RationalDifferentialForm":
        """Apply the Cartier operator.

        Writes f = A/B = A B^{p-1} / B^p, so C(f dz) = C(A B^{p-1} dz) / B, and
        on polynomials C(z^{pm+p-1} dz) = z^m dz while other monomials vanish.
        """
        field = self.field
        p = field.p
        numerator = self.f.num * self.f.den ** (p - 1)
        top = numerator.degree
        coeffs = [numerator.coefficient(p * m + p - 1).pth_root() for m in range(max(top // p + 1, 0))]
        return RationalDifferentialForm(RationalFunction(Poly(field, coeffs), self.f.den))

    def classify(self) -> FormClass:
        if self.is_zero():
            return FormClass.EXACT
        image = self.cartier()
        if image == self:
            return FormClass.LOGARITHMIC
        if image.is_zero():
            return FormClass.EXACT
        return FormClass.NEITHER

    # Orders, residues and divisors

    def _over(self, point: FiniteFieldElement) -> tuple["RationalDifferentialForm", FiniteFieldElement]:
        if point.field is self.field:
            return self, point
        big = common_field(self.field, point.field)
        return self.map_to(big), big(point) if point.field is not big else point

    def order_at(self, point: Point) -> int:
        """Order of vanishing at a point (negative for poles)."""
        if self.is_zero():
            raise ZeroFormError("zero form has no divisor")
        if point is INFINITY:
            return self.f.den.degree - self.f.num.degree - 2
        form, point = self._over(point)
        linear = Poly(form.field, [-point, 1])
        return _multiplicity(form.f.num, linear) - _multiplicity(form.f.den, linear)

    def residue_at(self, point: Point) -> FiniteFieldElement:
        """Residue at a point rational over the (possibly extended) field."""
        if point is INFINITY:
            return self.pullback(Mobius(0, 1, 1, 0, self.field)).residue_at(self.field.zero)
        form, point = self._over(point)
        field = form.field
        num = form.f.num.shift(point)
        den = form.f.den.shift(point)
        if num.is_zero():
            return field.zero
        k = den.valuation()
        if k == 0:
            return field.zero
        den_unit = Poly(field, den.coeffs[k:])
        # coefficient of w^{k-1} in num / den_unit as a power series
        series = _power_series_quotient(num, den_unit, k)
        return series[k - 1]

    def splitting_degree(self) -> int:
        """Degree s such that num and den split over F_{p^{r s}}."""
        return math.lcm(self.f.num.splitting_degree(), self.f.den.splitting_degree())

    def divisor(self) -> dict[Point, int]:
        """The divisor as {point: order}, points taken in a splitting field.

        Raises:
            ZeroFormError: For the zero form
            FieldError: If the splitting field exceeds config.MAX_SPLITTING_DEGREE
        """
        if self.is_zero():
            raise ZeroFormError("zero form has no divisor")
        s = self.splitting_degree()
        if self.field.r * s > config.MAX_SPLITTING_DEGREE:
            raise FieldError(
                "Splitting field too large for point enumeration",
                context={"degree": self.field.r * s, "limit": config.MAX_SPLITTING_DEGREE},
            )
        big = self.field.extension(s)
        form = self.map_to(big)
        result: dict[Point, int] = {}
        for root, multiplicity in form.f.num.roots():
            result[root] = result.get(root, 0) + multiplicity
        for root, multiplicity in form.f.den.roots():
            result[root] = result.get(root, 0) - multiplicity
        at_infinity = self.order_at(INFINITY)
        if at_infinity:
            result[INFINITY] = at_infinity
        return {pt: result[pt] for pt in sorted(result, key=point_sort_key) if result[pt]}

    def degree(self) -> int:
        return sum(self.divisor().values())

    # Pullback

    def pullback(self, phi: Mobius) -> "RationalDifferentialForm":
        """phi^*(f(z) dz) = f(phi(w)) * det / (c w + d)^2 dw"""
        if phi.field is not self.field:
            big = common_field(self.field, phi.field)
            return self.map_to(big).pullback(phi.map_to(big))
        field = self.field
        composed = self.f.compose_mobius(*phi.entries)
        jacobian = RationalFunction(Poly.constant(field, phi.determinant), Poly(field, [phi.d, phi.c]) ** 2)
        return RationalDifferentialForm(composed * jacobian)


def _multiplicity(poly: Poly, linear: Poly) -> int:
    if poly.is_zero():
        raise ZeroFormError("zero form has no divisor")
    count = 0
    while True:
        quotient, remainder = divmod(poly, linear)
        if not remainder.is_zero():
            return count
        poly = quotient
        count += 1


def _power_series_quotient(num: Poly, den: Poly, terms: int) -> list[FiniteFieldElement]:
    """First `terms` coefficients of num/den with den(0) != 0."""
    field = num.field
    inv = den.coefficient(0).inverse()
    result: list[FiniteFieldElement] = []
    for n in range(terms):
        acc = num.coefficient(n)
        for j in range(1, n + 1):
            acc = acc - den.coefficient(j) * result[n - j]
        result.append(acc * inv)
    return result


def cartier(form: RationalDifferentialForm) -> RationalDifferentialForm:
    return form.cartier()


def classify_form(form: RationalDifferentialForm) -> FormClass:
    """logarithmic iff C(w) = w, exact iff C(w) = 0, neither otherwise."""
    return form.classify()


def order_at(form: RationalDifferentialForm, point: Point) -> int:
    return form.order_at(point)

"""Rational functions over a finite field in coprime normal form."""

import tokenize
from typing import Union

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from src.algebra.finite_field import FiniteField, FiniteFieldElement
from src.algebra.polynomial import Poly
from src.utils.errors import FieldError, ValidationError


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

Point = Union[FiniteFieldElement, _Infinity]


def point_sort_key(point: Point) -> tuple:
    if point is INFINITY:
        return (1,)
    return (0, point.sort_key())


class RationalFunction:
    """A quotient num/den of polynomials with gcd 1 and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        field = num.field
        if den is None:
            den = Poly.constant(field, 1)
        if den.field is not field:
            raise FieldError("Numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroDivisionError("Rational function with zero denominator")
        if num.is_zero():
            self.num = num
            self.den = Poly.constant(field, 1)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading.inverse()
        self.num = num * lc
        self.den = den * lc

    @property
    def field(self) -> FiniteField:
        return self.num.field

    @classmethod
    def from_poly(cls, poly: Poly) -> "RationalFunction":
        return cls(poly)

    @classmethod
    def constant(cls, field: FiniteField, c: Union[FiniteFieldElement, int]) -> "RationalFunction":
        return cls(Poly.constant(field, c))

    @classmethod
    def variable(cls, field: FiniteField) -> "RationalFunction":
        return cls(Poly.x(field))

    def _lift(self, other: Union["RationalFunction", Poly, FiniteFieldElement, int]) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.field is not self.field:
                raise FieldError("Mixed-field rational function arithmetic")
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        return RationalFunction.constant(self.field, other)

    def __add__(self, other) -> "RationalFunction":
        other = self._lift(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RationalFunction":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        other = self._lift(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("Division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._lift(other) / self

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return RationalFunction(self.den**-exponent, self.num**-exponent)
        return RationalFunction(self.num**exponent, self.den**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, FiniteFieldElement)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def map_to(self, field: FiniteField) -> "RationalFunction":
        return RationalFunction(self.num.map_to(field), self.den.map_to(field))

    def __call__(self, point: Point) -> Point:
        """Evaluate at a point of the projective line."""
        if point is INFINITY:
            dn, dd = self.num.degree, self.den.degree
            if self.is_zero() or dn < dd:
                return self.field.zero
            if dn > dd:
                return INFINITY
            return self.num.leading / self.den.leading
        denominator = self.den(point)
        if not denominator:
            return INFINITY
        return self.num(point) / denominator

    def compose_mobius(self, a, b, c, d) -> "RationalFunction":
        """Return f((a w + b) / (c w + d)) as a rational function of w."""
        field = self.field
        top = Poly(field, [b, a])
        bottom = Poly(field, [d, c])

        def homogenize(poly: Poly, degree: int) -> Poly:
            result = Poly(field)
            for k, coeff in enumerate(poly.coeffs):
                if coeff:
                    result = result + top**k * bottom ** (degree - k) * coeff
            return result

        dn = max(self.num.degree, 0)
        dd = self.den.degree
        num = homogenize(self.num, dn)
        den = homogenize(self.den, dd)
        if dd >= dn:
            num = num * bottom ** (dd - dn)
        else:
            den = den * bottom ** (dn - dd)
        return RationalFunction(num, den)

    def to_string(self, var: str = "z") -> str:
        if self.den.is_one():
            return self.num.to_string(var)
        num = self.num.to_string(var)
        if len(self.num.coeffs) > 1 and sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        return f"{num}/({self.den.to_string(var)})"

    __str__ = to_string

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_string()!r} over {self.field!r})"


def _sympy_poly_to_field(expr, var: sympy.Symbol, gen: sympy.Symbol, field: FiniteField) -> Poly:
    p = field.p
    poly = sympy.Poly(expr, var, gen)
    coeffs: dict[int, FiniteFieldElement] = {}
    for (k, j), value in poly.terms():
        value = sympy.Rational(value)
        if value.q % p == 0:
            raise FieldError(f"Coefficient {value} is not p-integral", context={"p": p})
        scalar = field(int(value.p) * pow(int(value.q), -1, p))
        coeffs[k] = coeffs.get(k, field.zero) + scalar * field.gen**j
    if not coeffs:
        return Poly(field)
    return Poly(field, [coeffs.get(k, field.zero) for k in range(max(coeffs) + 1)])


def parse_rational_function(text: str, field: FiniteField, var: str = "z") -> RationalFunction:
    """Parse a string such as "1/((z^2-1)*(z^2-4))" into a rational function.

    The symbol "a" denotes the generator of the field over F_p. Rational
    constants are reduced modulo p.

    Raises:
        ValidationError: If the string is not a rational expression in var
    """
    z = sympy.Symbol(var)
    a = sympy.Symbol("a")
    try:
        expr = parse_expr(
            text,
            local_dict={var: z, "a": a},
            transformations=standard_transformations + (convert_xor,),
        )
        num, den = sympy.fraction(sympy.together(expr))
        num_poly = _sympy_poly_to_field(num, z, a, field)
        den_poly = _sympy_poly_to_field(den, z, a, field)
    except FieldError:
        raise
    except (sympy.SympifyError, sympy.PolynomialError, tokenize.TokenError, SyntaxError, TypeError, ValueError) as e:
        raise ValidationError(f"Cannot parse rational function {text!r}: {e}") from e
    if den_poly.is_zero():
        raise ValidationError(f"Denominator of {text!r} vanishes modulo {field.p}")
    return RationalFunction(num_poly, den_poly)

"""Laurent polynomials over a finite field in a tagged variable."""

from typing import Iterable, Iterator, Mapping, Union

from src.algebra.finite_field import FiniteField, FiniteFieldElement
from src.algebra.polynomial import Poly
from src.algebra.rational import RationalFunction
from src.utils.errors import FieldError, ValidationError

Coefficient = Union[FiniteFieldElement, int]


class LaurentPoly:
    """Finite sum of c_k * var^k with k in Z and c_k in a finite field.

    Attributes:
        field: Coefficient field
        terms: Mapping exponent -> nonzero coefficient
        var: Variable name used for rendering and serialization
    """

    __slots__ = ("field", "terms", "var")

    def __init__(self, field: FiniteField, terms: Mapping[int, Coefficient] | None = None, var: str = "t"):
        cleaned: dict[int, FiniteFieldElement] = {}
        for k, c in (terms or {}).items():
            value = field(c)
            if value:
                cleaned[int(k)] = value
        self.field = field
        self.terms = cleaned
        self.var = var

    @classmethod
    def monomial(cls, field: FiniteField, exponent: int, c: Coefficient = 1, var: str = "t") -> "LaurentPoly":
        return cls(field, {exponent: c}, var)

    @classmethod
    def zero(cls, field: FiniteField, var: str = "t") -> "LaurentPoly":
        return cls(field, {}, var)

    # Inspection

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, k: int) -> FiniteFieldElement:
        return self.terms.get(k, self.field.zero)

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def items(self) -> Iterator[tuple[int, FiniteFieldElement]]:
        for k in sorted(self.terms):
            yield k, self.terms[k]

    @property
    def degree(self) -> int:
        """Largest exponent; raises on zero."""
        if not self.terms:
            raise ValidationError("Degree of the zero Laurent polynomial")
        return max(self.terms)

    @property
    def valuation(self) -> int:
        """Smallest exponent; raises on zero."""
        if not self.terms:
            raise ValidationError("Valuation of the zero Laurent polynomial")
        return min(self.terms)

    @property
    def pole_order(self) -> int:
        """Degree as a polynomial in var^{-1}; 0 if there are no negative exponents."""
        if not self.terms:
            return 0
        return max(0, -self.valuation)

    def negative_part(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {k: c for k, c in self.terms.items() if k < 0}, self.var)

    def nonnegative_part(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {k: c for k, c in self.terms.items() if k >= 0}, self.var)

    def truncate(self, low: int | None = None, high: int | None = None) -> "LaurentPoly":
        """Keep terms with low <= k <= high."""
        return LaurentPoly(
            self.field,
            {k: c for k, c in self.terms.items() if (low is None or k >= low) and (high is None or k <= high)},
            self.var,
        )

    # Arithmetic

    def _lift(self, other: Union["LaurentPoly", Coefficient]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.field is not self.field:
                raise FieldError("Mixed-field Laurent arithmetic")
            return other
        return LaurentPoly(self.field, {0: other}, self.var)

    def __add__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return LaurentPoly(self.field, terms, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, {k: -c for k, c in self.terms.items()}, self.var)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        terms: dict[int, FiniteFieldElement] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                terms[i + j] = terms[i + j] + a * b if i + j in terms else a * b
        return LaurentPoly(self.field, terms, self.var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if len(self.terms) != 1:
                raise FieldError("Only monomials have Laurent inverses")
            (k, c), = self.terms.items()
            return LaurentPoly(self.field, {k * exponent: c**exponent}, self.var)
        result = LaurentPoly(self.field, {0: 1}, self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def frobenius(self) -> "LaurentPoly":
        """The p-th power, computed termwise."""
        p = self.field.p
        return LaurentPoly(self.field, {p * k: c.frobenius() for k, c in self.terms.items()}, self.var)

    def artin_schreier(self) -> "LaurentPoly":
        """z^p - z"""
        return self.frobenius() - self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.field is other.field and self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.order, tuple(sorted((k, c.coeffs) for k, c in self.terms.items()))))

    # Conversions

    def to_rational_function(self) -> RationalFunction:
        """Rational function in var with the negative part moved to the denominator."""
        if not self.terms:
            return RationalFunction(Poly(self.field))
        shift = max(0, -self.valuation)
        top = self.degree + shift
        coeffs = [self.coefficient(k - shift) for k in range(top + 1)]
        return RationalFunction(Poly(self.field, coeffs), Poly.monomial(self.field, shift))

    def to_dict(self) -> dict[str, int | list[int]]:
        return {str(k): c.to_json() for k, c in self.items()}

    @classmethod
    def from_dict(cls, field: FiniteField, data: Mapping[str, object], var: str = "t") -> "LaurentPoly":
        try:
            return cls(field, {int(k): field(v) for k, v in data.items()}, var)
        except (TypeError, ValueError) as e:
            raise ValidationError(f"Malformed Laurent polynomial: {data!r}") from e

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mono:
                parts.append(str(c))
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    __str__ = to_string

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_string()!r})"


def laurent_sum(field: FiniteField, parts: Iterable[LaurentPoly], var: str = "t") -> LaurentPoly:
    total = LaurentPoly.zero(field, var)
    for part in parts:
        total = total + part
    return total

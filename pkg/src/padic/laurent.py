"""Laurent polynomials in T^{-1} with p-adic or valuation-only coefficients."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

from src.algebra.finite_field import FiniteFieldElement
from src import config
from src.padic.ring import EisensteinRing, PadicElement, element_from_digits, ring_from_json
from src.padic.ring import exp_truncated as exp_truncated_element
from src.utils.errors import PrecisionError, ValidationError
from src.utils.file_loader import check_schema
from src.utils.rationals import format_rational, parse_rational


@dataclass(frozen=True)
class SymbolicCoefficient:
    """A coefficient known only through its valuation and unit residue.

    Attributes:
        valuation: Exact valuation (v(p) = 1)
        residue: Residue of coefficient / pi^{e v}, or None when unknown
    """

    valuation: Fraction
    residue: Optional[FiniteFieldElement] = None

    def unit_residue(self) -> Optional[FiniteFieldElement]:
        return self.residue

    def to_dict(self) -> dict:
        return {
            "valuation": format_rational(self.valuation),
            "residue": None if self.residue is None else self.residue.to_json(),
        }


Coefficient = Union[PadicElement, SymbolicCoefficient]


def coefficient_valuation(c: Coefficient) -> Fraction:
    if isinstance(c, SymbolicCoefficient):
        return c.valuation
    return c.valuation()


def coefficient_residue(c: Coefficient) -> Optional[FiniteFieldElement]:
    if isinstance(c, SymbolicCoefficient):
        return c.residue
    return c.unit_residue()


class ValuedLaurentPoly:
    """sum_k a_k T^{-k} for k >= 0.

    In exact mode every coefficient is a PadicElement of one ring and the usual
    ring operations are available. A polynomial becomes symbolic as soon as one
    coefficient is a SymbolicCoefficient; symbolic polynomials support only
    valuation queries, Newton polygons and the monomial exponential.

    Attributes:
        ring: Coefficient ring
        terms: Mapping exponent of T^{-1} -> coefficient; exact zeros are dropped
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: EisensteinRing, terms: Mapping[int, Coefficient] | None = None):
        cleaned: dict[int, Coefficient] = {}
        for k, c in (terms or {}).items():
            if k < 0:
                raise ValidationError(f"Exponent of T^-1 must be nonnegative, got {k}")
            if isinstance(c, (int, Fraction)):
                c = ring(c)
            if isinstance(c, PadicElement):
                if c.ring is not ring:
                    raise ValidationError("Coefficient from a different ring")
                if c.is_zero():
                    if not c.is_exact:
                        raise PrecisionError(
                            "Coefficient vanishes at working precision", context={"exponent": k, "prec": c.prec}
                        )
                    continue
            cleaned[int(k)] = c
        self.ring = ring
        self.terms = cleaned

    @classmethod
    def monomial(cls, ring: EisensteinRing, k: int, c: Coefficient | int = 1) -> "ValuedLaurentPoly":
        return cls(ring, {k: c})

    # Inspection

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(c, SymbolicCoefficient) for c in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Degree in T^{-1}."""
        if not self.terms:
            raise ValidationError("Degree of the zero polynomial")
        return max(self.terms)

    @property
    def lowest_exponent(self) -> int:
        if not self.terms:
            raise ValidationError("Lowest exponent of the zero polynomial")
        return min(self.terms)

    def coefficient(self, k: int) -> Optional[Coefficient]:
        return self.terms.get(k)

    def items(self) -> Iterator[tuple[int, Coefficient]]:
        for k in sorted(self.terms):
            yield k, self.terms[k]

    def valuations(self) -> dict[int, Fraction]:
        return {k: coefficient_valuation(c) for k, c in self.items()}

    def is_normalized(self) -> bool:
        """v(a_0) = 0 and v(a_j) > 0 for j >= 1."""
        if 0 not in self.terms:
            return False
        vals = self.valuations()
        return vals[0] == 0 and all(v > 0 for k, v in vals.items() if k > 0)

    def val_at_radius(self, r: Fraction) -> Fraction:
        """min_k v(a_k) - k r: the valuation on the circle v(T) = r."""
        if not self.terms:
            raise ValidationError("Valuation of the zero polynomial")
        return min(v - k * Fraction(r) for k, v in self.valuations().items())

    def dominant_exponents(self, r: Fraction) -> list[int]:
        w = self.val_at_radius(r)
        return [k for k, v in self.valuations().items() if v - k * Fraction(r) == w]

    # Arithmetic (exact mode)

    def _require_exact(self, *others: "ValuedLaurentPoly") -> None:
        for poly in (self, *others):
            if poly.is_symbolic:
                raise ValidationError("Arithmetic is not defined on symbolic coefficients")
            if poly.ring is not self.ring:
                raise ValidationError("Mixed-ring Laurent arithmetic")

    def _lift(self, other) -> "ValuedLaurentPoly":
        if isinstance(other, ValuedLaurentPoly):
            return other
        return ValuedLaurentPoly(self.ring, {0: self.ring(other)})

    def __add__(self, other) -> "ValuedLaurentPoly":
        other = self._lift(other)
        self._require_exact(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return ValuedLaurentPoly(self.ring, _drop_exact_zeros(terms))

    __radd__ = __add__

    def __neg__(self) -> "ValuedLaurentPoly":
        self._require_exact()
        return ValuedLaurentPoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "ValuedLaurentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "ValuedLaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "ValuedLaurentPoly":
        if isinstance(other, PadicElement) or isinstance(other, (int, Fraction)):
            self._require_exact()
            scalar = self.ring(other)
            return ValuedLaurentPoly(self.ring, _drop_exact_zeros({k: c * scalar for k, c in self.terms.items()}))
        self._require_exact(other)
        terms: dict[int, PadicElement] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                terms[i + j] = terms[i + j] + a * b if i + j in terms else a * b
        return ValuedLaurentPoly(self.ring, _drop_exact_zeros(terms))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ValuedLaurentPoly":
        if exponent < 0:
            raise ValidationError("Negative powers are not supported")
        result = ValuedLaurentPoly(self.ring, {0: self.ring.one})
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ValuedLaurentPoly):
            return NotImplemented
        if self.is_symbolic or other.is_symbolic:
            return self.terms == other.terms
        return (self - other).is_zero()

    __hash__ = None

    # Transformations

    def substitute_power(self, u: int) -> "ValuedLaurentPoly":
        """T^{-1} -> T^{-u}"""
        if u < 1:
            raise ValidationError(f"Substitution exponent must be positive, got {u}")
        return ValuedLaurentPoly(self.ring, {k * u: c for k, c in self.terms.items()})

    def to_symbolic(self) -> "ValuedLaurentPoly":
        """Forget all digits beyond the valuation and unit residue."""
        return ValuedLaurentPoly(
            self.ring,
            {
                k: c if isinstance(c, SymbolicCoefficient) else SymbolicCoefficient(c.valuation(), c.unit_residue())
                for k, c in self.terms.items()
            },
        )

    def to_dict(self) -> dict[str, dict]:
        result = {}
        for k, c in self.items():
            symbolic = c if isinstance(c, SymbolicCoefficient) else SymbolicCoefficient(c.valuation(), c.unit_residue())
            result[str(k)] = symbolic.to_dict()
        return result

    def __repr__(self) -> str:
        parts = [f"[v={format_rational(v)}]T^-{k}" for k, v in self.valuations().items()]
        return f"ValuedLaurentPoly({' + '.join(parts) or '0'})"


def _drop_exact_zeros(terms: dict[int, PadicElement]) -> dict[int, PadicElement]:
    return {k: c for k, c in terms.items() if not (c.is_exact and c.is_zero())}


def exp_truncated(x: Union[PadicElement, ValuedLaurentPoly]) -> Union[PadicElement, ValuedLaurentPoly]:
    """sum_{i < p} x^i / i! for a ring element or a Laurent argument.

    Symbolic arguments must be monomials: (c T^{-k})^i / i! then has valuation
    i v(c) and residue res(c)^i / i!.
    """
    if isinstance(x, PadicElement):
        return exp_truncated_element(x)
    ring = x.ring
    p = ring.p
    if x.is_symbolic:
        if len(x.terms) != 1:
            raise ValidationError("Symbolic truncated exponential needs a monomial argument")
        ((k, c),) = x.terms.items()
        terms: dict[int, Coefficient] = {0: SymbolicCoefficient(Fraction(0), ring.residue_field.one)}
        for i in range(1, p):
            residue = None if c.residue is None else c.residue**i * ring.residue_field(math.factorial(i)).inverse()
            terms[k * i] = SymbolicCoefficient(i * c.valuation, residue)
        return ValuedLaurentPoly(ring, terms)
    total = ValuedLaurentPoly(ring, {0: ring.one})
    power = ValuedLaurentPoly(ring, {0: ring.one})
    for i in range(1, p):
        power = power * x
        total = total + power * Fraction(1, math.factorial(i))
    return total


def laurent_from_json(data: dict, precision: Optional[int] = None) -> ValuedLaurentPoly:
    """Parse a laurent document.

    The ring is given as in ring_from_json. Each entry of "terms" is either
    {"k": 2, "coefficients": [0, 0, 0, 1]} for the exact coefficient
    sum_i c_i pi^i of T^-k, or {"k": 2, "valuation": "3/2", "residue": 1} for
    a symbolic one.

    Raises:
        InputFileError: If the schema tag is wrong
        ValidationError: If the document is malformed
    """
    check_schema(data, config.SCHEMA_LAURENT)
    try:
        ring = ring_from_json(data, precision)
        terms: dict[int, Coefficient] = {}
        for entry in data["terms"]:
            k = int(entry["k"])
            if "coefficients" in entry:
                terms[k] = element_from_digits(ring, entry["coefficients"])
            else:
                residue = entry.get("residue")
                terms[k] = SymbolicCoefficient(
                    parse_rational(entry["valuation"]), None if residue is None else ring.residue_field(residue)
                )
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"Malformed Laurent polynomial document: {e}") from e
    return ValuedLaurentPoly(ring, terms)

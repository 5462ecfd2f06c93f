"""Normal forms of Z/p^n-extensions of k((t)) and their upper jumps.

A cyclic extension of degree p^n is given by a length-n Witt vector
(x_1, ..., x_n) of polynomials in t^{-1}. In normal form x_1 = c t^{-j} with
p not dividing j, and every x_i has only negative exponents prime to p.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from sympy import isprime

from src import config
from src.algebra.finite_field import FiniteField
from src.algebra.laurent import LaurentPoly
from src.ramification.filtration import cyclic_different
from src.utils.errors import NormalFormError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WittNormalForm:
    """Artin-Schreier-Witt data (x_1, ..., x_n) over F_{p^r}.

    Attributes:
        field: Coefficient field F_{p^r}
        components: The Laurent polynomials x_1, ..., x_n in t
    """

    field: FiniteField
    components: tuple[LaurentPoly, ...]

    def __post_init__(self):
        self.validate()

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def length(self) -> int:
        return len(self.components)

    @classmethod
    def from_terms(cls, p: int, components: Sequence[dict[int, Any]], r: int = 1) -> "WittNormalForm":
        """Build from exponent -> coefficient maps, e.g. [{-1: 1}, {-7: 2}]."""
        field = FiniteField(p, r)
        return cls(field, tuple(LaurentPoly(field, terms) for terms in components))

    def validate(self) -> None:
        """Check the normal form.

        Raises:
            NormalFormError: If x_1 is not c t^{-j} with p not dividing j, or a
                later component has a nonnegative exponent or one divisible by p
        """
        p = self.p
        if not self.components:
            raise NormalFormError("A Witt vector needs at least one component")
        for x in self.components:
            if x.field is not self.field:
                raise NormalFormError("All components must share the coefficient field")
        first = self.components[0]
        if len(first.terms) != 1:
            raise NormalFormError("x_1 must be a single monomial c t^{-j}", context={"x_1": str(first)})
        (j,) = first.terms
        if j >= 0:
            raise NormalFormError("x_1 must have a pole", context={"x_1": str(first)})
        if j % p == 0:
            raise NormalFormError(f"The exponent of x_1 must be prime to p (j={-j}, p={p})")
        for i, x in enumerate(self.components[1:], start=2):
            for k in x.terms:
                if k >= 0:
                    raise NormalFormError(f"x_{i} must be a polynomial in t^-1 without constant term")
                if k % p == 0:
                    raise NormalFormError(f"x_{i} has a term t^{k} with exponent divisible by p")

    def to_json(self) -> dict:
        return {
            "schema": config.SCHEMA_WITT,
            "p": self.p,
            "r": self.field.r,
            "witt": [x.to_dict() for x in self.components],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WittNormalForm":
        try:
            field = FiniteField(int(data["p"]), int(data.get("r", 1)))
            components = tuple(LaurentPoly.from_dict(field, x) for x in data["witt"])
        except (KeyError, TypeError, ValueError) as e:
            raise NormalFormError(f"Malformed Witt vector document: {e}") from e
        return cls(field, components)


def asw_upper_jumps(w: WittNormalForm) -> tuple[int, ...]:
    """u_1 = j and u_i = max(deg x_i, p u_{i-1}), degrees taken in t^{-1}."""
    p = w.p
    jumps = [w.components[0].pole_order]
    for x in w.components[1:]:
        jumps.append(max(x.pole_order, p * jumps[-1]))
    logger.debug(f"Upper jumps {jumps} for p={p}")
    return tuple(jumps)


def jump_constraints_hold(p: int, jumps: Sequence[Any]) -> bool:
    """u_1 > 0 prime to p, u_i >= p u_{i-1}, and p does not divide u_i when strict."""
    if not isprime(p) or not jumps:
        return False
    values = [Fraction(u) for u in jumps]
    if any(u.denominator != 1 for u in values):
        return False
    if values[0] <= 0 or values[0] % p == 0:
        return False
    for previous, u in zip(values, values[1:]):
        if u < p * previous:
            return False
        if u > p * previous and u % p == 0:
            return False
    return True


def different_of(w: WittNormalForm) -> Fraction:
    """Different of the extension, via its upper jumps."""
    return cyclic_different(w.p, asw_upper_jumps(w))

"""Dense univariate polynomials over a finite field, with factorization.

Root finding follows the classical pipeline: squarefree decomposition,
distinct-degree factorization, then Cantor-Zassenhaus equal-degree splitting
driven by a seeded random generator so results never depend on run order.
"""

import logging
import math
import random
from typing import Iterable, Sequence, Union

from src import config
from src.algebra.finite_field import FiniteField, FiniteFieldElement
from src.utils.errors import FieldError

logger = logging.getLogger(__name__)

Coefficient = Union[FiniteFieldElement, int]


class Poly:
    """Polynomial with coefficients stored low to high, trailing zeros stripped.

    Attributes:
        field: Coefficient field
        coeffs: Tuple of field elements, coeffs[k] multiplies x^k
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[Coefficient] = ()):
        values = [field(c) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        self.field = field
        self.coeffs: tuple[FiniteFieldElement, ...] = tuple(values)

    # Constructors

    @classmethod
    def constant(cls, field: FiniteField, c: Coefficient) -> "Poly":
        return cls(field, [c])

    @classmethod
    def x(cls, field: FiniteField) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def monomial(cls, field: FiniteField, degree: int, c: Coefficient = 1) -> "Poly":
        return cls(field, [0] * degree + [c])

    @classmethod
    def from_roots(cls, field: FiniteField, roots: Sequence[Coefficient]) -> "Poly":
        result = cls.constant(field, 1)
        for a in roots:
            result = result * cls(field, [-field(a), 1])
        return result

    # Basic properties

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> FiniteFieldElement:
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def coefficient(self, k: int) -> FiniteFieldElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.leading.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def valuation(self) -> int:
        """Multiplicity of x as a factor; the zero polynomial raises."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise FieldError("Valuation of the zero polynomial")

    def __call__(self, x: FiniteFieldElement | int) -> FiniteFieldElement:
        if isinstance(x, FiniteFieldElement) and x.field is not self.field:
            return self.map_to(x.field)(x)
        x = self.field(x)
        result = self.field.zero
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def map_to(self, field: FiniteField) -> "Poly":
        """Embed coefficients into a larger field."""
        if field is self.field:
            return self
        return Poly(field, [field(c) for c in self.coeffs])

    # Arithmetic

    def _lift(self, other: Union["Poly", Coefficient]) -> "Poly":
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldError(
                    "Mixed-field polynomial arithmetic",
                    context={"left": repr(self.field), "right": repr(other.field)},
                )
            return other
        return Poly.constant(self.field, other)

    def __add__(self, other: Union["Poly", Coefficient]) -> "Poly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero
        return Poly(
            self.field,
            [
                (self.coeffs[k] if k < len(self.coeffs) else zero) + (other.coeffs[k] if k < len(other.coeffs) else zero)
                for k in range(n)
            ],
        )

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: Union["Poly", Coefficient]) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Coefficient) -> "Poly":
        return (-self) + other

    def __mul__(self, other: Union["Poly", Coefficient]) -> "Poly":
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.field)
        result = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    result[i + j] = result[i + j] + a * b
        return Poly(self.field, result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise FieldError("Negative power of a polynomial")
        result = Poly.constant(self.field, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [self.field.zero] * max(len(remainder) - len(other.coeffs) + 1, 0)
        inv = other.leading.inverse()
        d = other.degree
        for k in range(len(remainder) - 1, d - 1, -1):
            c = remainder[k]
            if not c:
                continue
            factor = c * inv
            quotient[k - d] = factor
            for j, b in enumerate(other.coeffs):
                remainder[k - d + j] = remainder[k - d + j] - factor * b
        return Poly(self.field, quotient), Poly(self.field, remainder[:d] if d > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise FieldError("Polynomial division is not exact")
        return quotient

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self == Poly.constant(self.field, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.r, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, {[c.to_json() for c in self.coeffs]})"

    def to_string(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(str(c))
            elif c.is_one():
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    __str__ = to_string

    # Calculus and composition

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "Poly") -> "Poly":
        result = Poly(self.field)
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def shift(self, a: Coefficient) -> "Poly":
        """Return f(x + a)."""
        return self.compose(Poly(self.field, [a, 1]))

    def pth_root(self) -> "Poly":
        """Return g with g^p = f; f must have zero derivative."""
        p = self.field.p
        if any(c for k, c in enumerate(self.coeffs) if k % p):
            raise FieldError("Polynomial is not a p-th power")
        return Poly(self.field, [self.coeffs[k].pth_root() for k in range(0, len(self.coeffs), p)])

    # Euclidean algorithm

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, exponent: int, modulus: "Poly") -> "Poly":
        result = Poly.constant(self.field, 1) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result

    # Factorization

    def is_squarefree(self) -> bool:
        if self.degree <= 0:
            return True
        return self.gcd(self.derivative()).degree == 0

    def squarefree_decomposition(self) -> list[tuple["Poly", int]]:
        """Return [(g, k)] with f = lc * prod g^k, each g monic squarefree.

        Factors with equal multiplicity are merged; output is sorted by
        multiplicity.
        """
        if self.is_zero():
            raise FieldError("Squarefree decomposition of the zero polynomial")
        factors: dict[int, Poly] = {}

        def record(g: "Poly", k: int) -> None:
            if g.degree > 0:
                factors[k] = factors[k] * g if k in factors else g

        def decompose(f: "Poly", scale: int) -> None:
            p = f.field.p
            if f.degree <= 0:
                return
            df = f.derivative()
            if df.is_zero():
                decompose(f.pth_root(), scale * p)
                return
            c = f.gcd(df)
            w = f.exact_div(c)
            i = 1
            while w.degree > 0:
                y = w.gcd(c)
                record(w.exact_div(y).monic(), i * scale)
                i += 1
                w = y
                c = c.exact_div(y)
            if c.degree > 0:
                decompose(c.pth_root(), scale * p)

        decompose(self.monic(), 1)
        return sorted(((g.monic(), k) for k, g in factors.items()), key=lambda item: item[1])

    def distinct_degree_factorization(self) -> list[tuple["Poly", int]]:
        """Split a monic squarefree polynomial into products of equal-degree irreducibles."""
        q = self.field.order
        x = Poly.x(self.field)
        remaining = self.monic()
        result: list[tuple[Poly, int]] = []
        h = x % remaining if remaining.degree > 0 else x
        i = 1
        while remaining.degree >= 2 * i:
            h = h.powmod(q, remaining)
            g = remaining.gcd(h - x)
            if g.degree > 0:
                result.append((g, i))
                remaining = remaining.exact_div(g)
                h = h % remaining
            i += 1
        if remaining.degree > 0:
            result.append((remaining, remaining.degree))
        return result

    def equal_degree_split(self, d: int, rng: random.Random) -> list["Poly"]:
        """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
        f = self.monic()
        n = f.degree
        if n <= d:
            return [f] if n > 0 else []
        q = self.field.order
        p = self.field.p
        while True:
            h = Poly(self.field, [self.field.random(rng) for _ in range(n)])
            if h.degree <= 0:
                continue
            g = f.gcd(h)
            if 0 < g.degree < n:
                break
            if p == 2:
                # Absolute trace map h + h^2 + ... + h^{2^{rd-1}} mod f
                total = h % f
                power = total
                for _ in range(self.field.r * d - 1):
                    power = (power * power) % f
                    total = total + power
                g = f.gcd(total)
            else:
                g = f.gcd(h.powmod((q**d - 1) // 2, f) - 1)
            if 0 < g.degree < n:
                break
        return g.equal_degree_split(d, rng) + f.exact_div(g).equal_degree_split(d, rng)

    def factor(self) -> list[tuple["Poly", int]]:
        """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
        rng = random.Random(config.ROOT_FINDING_SEED)
        result: list[tuple[Poly, int]] = []
        for part, multiplicity in self.squarefree_decomposition():
            for block, d in part.distinct_degree_factorization():
                for irreducible in block.equal_degree_split(d, rng):
                    result.append((irreducible, multiplicity))
        result.sort(key=lambda item: (item[0].degree, [c.sort_key() for c in item[0].coeffs]))
        return result

    def roots(self) -> list[tuple[FiniteFieldElement, int]]:
        """Roots in the coefficient field with multiplicities, sorted."""
        if self.is_zero():
            raise FieldError("Roots of the zero polynomial")
        result = []
        rng = random.Random(config.ROOT_FINDING_SEED)
        q = self.field.order
        x = Poly.x(self.field)
        for part, multiplicity in self.squarefree_decomposition():
            linear = part.gcd(x.powmod(q, part) - x) if part.degree > 1 else part
            for factor in linear.equal_degree_split(1, rng):
                result.append((-factor.coeffs[0], multiplicity))
        result.sort(key=lambda item: item[0].sort_key())
        return result

    def splitting_degree(self) -> int:
        """Degree over the coefficient field of the splitting field."""
        if self.degree <= 0:
            return 1
        return math.lcm(*(g.degree for g, _ in self.factor()))

    def is_irreducible(self) -> bool:
        if self.degree <= 0:
            return False
        factors = self.factor()
        return len(factors) == 1 and factors[0][1] == 1

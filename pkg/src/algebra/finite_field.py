"""Finite fields F_{p^r} with elements in a fixed polynomial basis.

A field is identified by (p, r); instances are cached so that two calls with
the same arguments return the same object and elements compare by identity of
their parent. The defining modulus is the first monic irreducible polynomial of
degree r in lexicographic order of its coefficient vector, which keeps every
computation reproducible.
"""

import itertools
import logging
import math
import random
from functools import lru_cache
from typing import Iterator, Union

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from src.utils.errors import FieldError

logger = logging.getLogger(__name__)

Scalar = Union["FiniteFieldElement", int]


def _find_modulus(p: int, r: int) -> tuple[int, ...]:
    """Return the first monic irreducible polynomial of degree r (low to high)."""
    if r == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=r):
        # itertools.product varies the last slot fastest; read it as the
        # constant term so enumeration is by increasing integer encoding.
        coeffs = tuple(reversed(low)) + (1,)
        if coeffs[0] == 0:
            continue
        if gf_irreducible_p(list(reversed(coeffs)), p, ZZ):
            return coeffs
    raise FieldError(f"No irreducible polynomial of degree {r} over F_{p}")  # pragma: no cover


class FiniteField:
    """The finite field F_{p^r}.

    Attributes:
        p: Characteristic (prime)
        r: Degree over the prime field
        order: Number of elements p^r
        modulus: Monic irreducible polynomial (low to high) defining the field
    """

    _cache: dict[tuple[int, int], "FiniteField"] = {}

    def __new__(cls, p: int, r: int = 1) -> "FiniteField":
        key = (p, r)
        cached = cls._cache.get(key)
        if cached is not None:
            return cached
        if not isinstance(p, int) or not isprime(p):
            raise FieldError(f"Characteristic must be prime, got {p}", context={"p": p})
        if not isinstance(r, int) or r < 1:
            raise FieldError(f"Extension degree must be a positive integer, got {r}", context={"r": r})
        field = super().__new__(cls)
        field.p = p
        field.r = r
        field.order = p**r
        field.modulus = _find_modulus(p, r)
        cls._cache[key] = field
        logger.debug(f"Constructed F_{p}^{r} with modulus {field.modulus}")
        return field

    def __getnewargs__(self) -> tuple[int, int]:
        return (self.p, self.r)

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.r})"

    def __call__(self, value: Union[int, "FiniteFieldElement", tuple, list]) -> "FiniteFieldElement":
        """Coerce an integer, coordinate vector or element into this field."""
        if isinstance(value, FiniteFieldElement):
            if value.field is self:
                return value
            if value.field.r == 1 or value.is_prime_field():
                return self(value.coeffs[0])
            return embed_element(value, self)
        if isinstance(value, bool):
            raise FieldError(f"Cannot coerce {value!r} into {self}")
        if isinstance(value, int):
            return FiniteFieldElement(self, (value % self.p,) + (0,) * (self.r - 1))
        if isinstance(value, (tuple, list)):
            if len(value) > self.r:
                raise FieldError(f"Coordinate vector of length {len(value)} does not fit {self}")
            coeffs = tuple(int(c) % self.p for c in value) + (0,) * (self.r - len(value))
            return FiniteFieldElement(self, coeffs)
        raise FieldError(f"Cannot coerce {value!r} into {self}")

    @property
    def zero(self) -> "FiniteFieldElement":
        return self(0)

    @property
    def one(self) -> "FiniteFieldElement":
        return self(1)

    @property
    def gen(self) -> "FiniteFieldElement":
        """Class of x in F_p[x]/(modulus); equals 0 when r = 1."""
        if self.r == 1:
            return self(0)
        return self((0, 1))

    def elements(self) -> Iterator["FiniteFieldElement"]:
        """Iterate over all field elements in coordinate order."""
        for low in itertools.product(range(self.p), repeat=self.r):
            yield FiniteFieldElement(self, tuple(reversed(low)))

    def nonzero_elements(self) -> Iterator["FiniteFieldElement"]:
        return (x for x in self.elements() if x)

    def random(self, rng: random.Random) -> "FiniteFieldElement":
        return FiniteFieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.r)))

    def extension(self, s: int) -> "FiniteField":
        """Return F_{p^{r s}}."""
        return FiniteField(self.p, self.r * s)

    def contains(self, other: "FiniteField") -> bool:
        return other.p == self.p and self.r % other.r == 0


class FiniteFieldElement:
    """An element of F_{p^r} as coordinates in the basis 1, x, ..., x^{r-1}."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # Coercion helpers

    def _coerce(self, other: Scalar) -> "FiniteFieldElement":
        if isinstance(other, FiniteFieldElement):
            if other.field is self.field:
                return other
            raise FieldError(
                "Mixed-field arithmetic",
                context={"left": repr(self.field), "right": repr(other.field)},
            )
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field(other)
        return NotImplemented

    # Arithmetic

    def __add__(self, other: Scalar) -> "FiniteFieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FiniteFieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "FiniteFieldElement":
        p = self.field.p
        return FiniteFieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: Scalar) -> "FiniteFieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FiniteFieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other: Scalar) -> "FiniteFieldElement":
        return -self + other

    def __mul__(self, other: Scalar) -> "FiniteFieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        field = self.field
        p = field.p
        if field.r == 1:
            return FiniteFieldElement(field, ((self.coeffs[0] * other.coeffs[0]) % p,))
        r = field.r
        product = [0] * (2 * r - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
        modulus = field.modulus
        for k in range(2 * r - 2, r - 1, -1):
            c = product[k] % p
            if c:
                for j in range(r):
                    product[k - r + j] -= c * modulus[j]
        return FiniteFieldElement(field, tuple(c % p for c in product[:r]))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "FiniteFieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.field.r == 1:
            return FiniteFieldElement(self.field, (pow(self.coeffs[0], exponent, self.field.p),))
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "FiniteFieldElement":
        if not self:
            raise ZeroDivisionError("Inverse of zero in a finite field")
        if self.field.r == 1:
            return FiniteFieldElement(self.field, (pow(self.coeffs[0], -1, self.field.p),))
        return self ** (self.field.order - 2)

    def __truediv__(self, other: Scalar) -> "FiniteFieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "FiniteFieldElement":
        return self.field(other) * self.inverse() if isinstance(other, int) else NotImplemented

    # Frobenius

    def frobenius(self) -> "FiniteFieldElement":
        """Return x^p."""
        return self**self.field.p

    def pth_root(self) -> "FiniteFieldElement":
        """Return the unique y with y^p = x, namely x^{p^{r-1}}."""
        if self.field.r == 1:
            return self
        return self ** (self.field.order // self.field.p)

    def trace(self) -> int:
        """Absolute trace to the prime field."""
        total = self
        power = self
        for _ in range(self.field.r - 1):
            power = power.frobenius()
            total = total + power
        return total.coeffs[0]

    # Predicates and conversions

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        """Return the representative in 0..p-1 of a prime-field element."""
        if not self.is_prime_field():
            raise FieldError(f"{self} does not lie in the prime field")
        return self.coeffs[0]

    def sort_key(self) -> tuple[int, ...]:
        return self.coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FiniteFieldElement):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_prime_field():
            return hash(self.coeffs[0])
        return hash((self.field.p, self.field.r, self.coeffs))

    def __repr__(self) -> str:
        return f"FiniteFieldElement({self.field!r}, {self.coeffs})"

    def __str__(self) -> str:
        if self.is_prime_field():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "a" if k == 1 else f"a^{k}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "(" + " + ".join(reversed(terms)) + ")"

    def to_json(self) -> int | list[int]:
        """Serialize as an int (prime field) or a coordinate list."""
        if self.field.r == 1:
            return self.coeffs[0]
        return list(self.coeffs)


def field_element_from_json(field: FiniteField, value: int | list[int]) -> FiniteFieldElement:
    return field(value)


def common_field(*fields: FiniteField) -> FiniteField:
    """Return the smallest field of the family F_{p^r} containing all arguments."""
    p = fields[0].p
    if any(f.p != p for f in fields):
        raise FieldError("Fields of different characteristic", context={"fields": fields})
    degree = math.lcm(*(f.r for f in fields))
    return FiniteField(p, degree)


@lru_cache(maxsize=None)
def _embedding_image(small: FiniteField, big: FiniteField) -> FiniteFieldElement:
    # Local import; polynomial depends on this module.
    from src.algebra.polynomial import Poly

    if not big.contains(small):
        raise FieldError(f"{small} does not embed into {big}")
    modulus = Poly(big, list(small.modulus))
    roots = modulus.roots()
    if not roots:
        raise FieldError(f"Modulus of {small} has no root in {big}")  # pragma: no cover
    return min((root for root, _ in roots), key=lambda x: x.sort_key())


def embed_element(x: FiniteFieldElement, big: FiniteField) -> FiniteFieldElement:
    """Map an element into a larger field of the same characteristic.

    The embedding sends the generator of the small field to the smallest root
    of its modulus in the big field, so repeated calls agree.
    """
    small = x.field
    if small is big:
        return x
    if x.is_prime_field():
        return big(x.coeffs[0])
    image = _embedding_image(small, big)
    result = big.zero
    power = big.one
    for c in x.coeffs:
        if c:
            result = result + power * c
        power = power * image
    return result

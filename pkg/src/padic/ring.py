"""Truncated totally ramified extensions of the Witt vectors of F_{p^r}.

An EisensteinRing is O = W[pi] / (E(pi)) where W = W(F_{p^r}) and E is an
Eisenstein polynomial of degree e. Elements are stored as e coefficients in W,
each truncated modulo p^M with M = ceil(N / e), so N pi-adic digits are
carried. Valuations are normalized by v(p) = 1, hence v(pi) = 1/e.

Every element records the number of p-adic digits it is known to. Ring
operations propagate that bound; any query that would need a lost digit raises
PrecisionError instead of returning a rounded answer.
"""

import logging
import math
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

import sympy
from sympy import isprime
from sympy.polys.specialpolys import cyclotomic_poly

from src import config
from src.algebra.finite_field import FiniteField, FiniteFieldElement
from src.utils.errors import PrecisionError, ValidationError
from src.utils.rationals import parse_rational

logger = logging.getLogger(__name__)

Witt = tuple[int, ...]


def _vp(n: int, p: int) -> int:
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


class EisensteinRing:
    """Truncated ring W(F_{p^r})[pi] with pi a root of an Eisenstein polynomial.

    Attributes:
        p: Residue characteristic
        r: Degree of the residue field over F_p
        e: Ramification index (degree of the Eisenstein polynomial)
        eisenstein: Integer coefficients of the monic Eisenstein polynomial, low to high
        precision: Requested number of pi-adic digits N
        cap: Number of p-adic digits M = ceil(N / e) stored per coefficient
        residue_field: FiniteField(p, r)
    """

    def __init__(self, p: int, eisenstein: Sequence[int], r: int = 1, precision: int | None = None):
        if not isprime(p):
            raise ValidationError(f"p must be prime, got {p}", context={"p": p})
        precision = config.DEFAULT_PRECISION if precision is None else precision
        if precision < 1:
            raise PrecisionError(f"Precision must be positive, got {precision}")
        raw = [int(c) for c in eisenstein]
        if len(raw) < 2:
            raise ValidationError("Eisenstein polynomial must have degree at least 1")
        if raw[-1] % p == 0:
            raise ValidationError("Leading coefficient of an Eisenstein polynomial must be a unit")
        if any(c % p for c in raw[:-1]):
            raise ValidationError("Non-leading coefficients must be divisible by p", context={"eisenstein": list(eisenstein)})
        if raw[0] % (p * p) == 0:
            raise ValidationError("Constant term must have valuation exactly 1", context={"eisenstein": list(eisenstein)})
        e = len(raw) - 1
        cap = -(-precision // e)
        modulus = p**cap
        # One extra digit so that the coefficients divided by p stay exact mod p^M
        inv = pow(raw[-1], -1, modulus * p)
        coeffs = [(c * inv) % (modulus * p) for c in raw]

        self.p = p
        self.r = r
        self.e = e
        self.eisenstein = tuple(c % modulus for c in coeffs)
        self._eisenstein_fine = tuple(coeffs)
        self.precision = precision
        self.cap = cap
        self.modulus = modulus
        self.residue_field = FiniteField(p, r)
        # Unramified modulus: the residue field's defining polynomial read over Z
        self._w_modulus = self.residue_field.modulus
        logger.debug(f"EisensteinRing p={p} r={r} e={e} N={precision} (M={cap})")

    def __repr__(self) -> str:
        return f"EisensteinRing(p={self.p}, r={self.r}, e={self.e}, precision={self.precision})"

    # Arithmetic on W = Z_{p^r} modulo p^M

    def _w_zero(self) -> Witt:
        return (0,) * self.r

    def _w_add(self, a: Witt, b: Witt) -> Witt:
        m = self.modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    def _w_sub(self, a: Witt, b: Witt) -> Witt:
        m = self.modulus
        return tuple((x - y) % m for x, y in zip(a, b))

    def _w_scale(self, a: Witt, c: int) -> Witt:
        m = self.modulus
        return tuple((x * c) % m for x in a)

    def _w_mul(self, a: Witt, b: Witt) -> Witt:
        m = self.modulus
        r = self.r
        if r == 1:
            return ((a[0] * b[0]) % m,)
        product = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    product[i + j] += x * y
        mod = self._w_modulus
        for k in range(2 * r - 2, r - 1, -1):
            c = product[k] % m
            if c:
                for j in range(r):
                    product[k - r + j] -= c * mod[j]
        return tuple(c % m for c in product[:r])

    def _w_valuation(self, a: Witt, prec: int) -> int | None:
        """p-adic valuation of a W coefficient, None if it vanishes mod p^prec."""
        best = None
        bound = self.p**prec
        for x in a:
            x %= bound
            if x:
                v = _vp(x, self.p)
                best = v if best is None else min(best, v)
        return best

    # Element construction

    def element(self, coeffs: Sequence[Witt], prec: int | None = None) -> "PadicElement":
        values = [tuple(c) for c in coeffs] + [self._w_zero()] * (self.e - len(coeffs))
        return PadicElement(self, tuple(values[: self.e]), self.cap if prec is None else prec)

    def __call__(self, value: Union[int, "PadicElement", Fraction]) -> "PadicElement":
        if isinstance(value, PadicElement):
            if value.ring is not self:
                raise ValidationError("Element belongs to a different ring")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ValidationError(f"{value} is not p-integral")
            return self(value.numerator) * self(value.denominator).inverse()
        if isinstance(value, int) and not isinstance(value, bool):
            return self.element([(value % self.modulus,) + (0,) * (self.r - 1)])
        raise ValidationError(f"Cannot coerce {value!r} into {self}")

    @property
    def zero(self) -> "PadicElement":
        return self(0)

    @property
    def one(self) -> "PadicElement":
        return self(1)

    @cached_property
    def pi(self) -> "PadicElement":
        """The uniformizer."""
        if self.e == 1:
            # pi is a root of x + a_0, i.e. pi = -a_0
            return self(-self.eisenstein[0])
        return self.element([self._w_zero(), (1,) + (0,) * (self.r - 1)])

    def pi_power(self, k: int) -> "PadicElement":
        if k < 0:
            raise ValidationError("Negative power of the uniformizer is not integral")
        cache = self.__dict__.setdefault("_pi_powers", [self.one])
        while len(cache) <= k:
            cache.append(cache[-1] * self.pi)
        return cache[k]

    @cached_property
    def _unit_w(self) -> "PadicElement":
        """w with pi^e = p w; a unit."""
        p = self.p
        unit = (1,) + (0,) * (self.r - 1)
        return self.element([self._w_scale(unit, -(c // p)) for c in self._eisenstein_fine[:-1]])

    @cached_property
    def _unit_w_inverse(self) -> "PadicElement":
        return self._unit_w.inverse()

    def lift(self, x: FiniteFieldElement | int) -> "PadicElement":
        """Lift a residue field element to W using its coordinates."""
        if isinstance(x, int):
            return self(x)
        if x.field is not self.residue_field:
            x = self.residue_field(x)
        return self.element([tuple(x.coeffs)])


class PadicElement:
    """Element of an EisensteinRing known modulo p^prec.

    Attributes:
        ring: Parent ring
        coeffs: e coefficients in W (tuples of r integers mod p^M), coeffs[i] multiplies pi^i
        prec: Number of p-adic digits known, at most ring.cap
    """

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring: EisensteinRing, coeffs: tuple[Witt, ...], prec: int):
        self.ring = ring
        self.coeffs = coeffs
        self.prec = max(0, min(prec, ring.cap))

    @property
    def is_exact(self) -> bool:
        return self.prec == self.ring.cap

    def _coerce(self, other) -> "PadicElement":
        if isinstance(other, PadicElement):
            if other.ring is not self.ring:
                raise ValidationError("Mixed-ring p-adic arithmetic")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring(other)
        return NotImplemented

    # Additive structure

    def __add__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ring = self.ring
        coeffs = tuple(ring._w_add(a, b) for a, b in zip(self.coeffs, other.coeffs))
        return PadicElement(ring, coeffs, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self) -> "PadicElement":
        ring = self.ring
        return PadicElement(ring, tuple(ring._w_scale(a, -1) for a in self.coeffs), self.prec)

    def __sub__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PadicElement":
        return (-self) + other

    # Multiplicative structure

    def __mul__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ring = self.ring
        e = ring.e
        product = [ring._w_zero() for _ in range(2 * e - 1)]
        for i, a in enumerate(self.coeffs):
            if not any(a):
                continue
            for j, b in enumerate(other.coeffs):
                if any(b):
                    product[i + j] = ring._w_add(product[i + j], ring._w_mul(a, b))
        # pi^e = -(E_0 + ... + E_{e-1} pi^{e-1})
        eis = ring.eisenstein
        for k in range(2 * e - 2, e - 1, -1):
            top = product[k]
            if any(top):
                for j in range(e):
                    if eis[j]:
                        product[k - e + j] = ring._w_sub(product[k - e + j], ring._w_scale(top, eis[j]))
        bound = min(
            self.prec + other.valuation_lower_bound(),
            other.prec + self.valuation_lower_bound(),
        )
        prec = ring.cap if bound >= ring.cap else math.floor(bound)
        return PadicElement(ring, tuple(product[:e]), prec)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PadicElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ring.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "PadicElement":
        """Inverse of a unit by Newton iteration y <- y (2 - x y)."""
        if self.valuation() != 0:
            raise ValidationError("Only units are invertible in the ring", context={"valuation": str(self.valuation())})
        ring = self.ring
        y = ring.lift(self.residue().inverse())
        target = ring.e * ring.cap
        known = 1
        while known < target:
            y = y * (2 - self * y)
            known *= 2
        return PadicElement(ring, y.coeffs, self.prec)

    def __truediv__(self, other) -> "PadicElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        v = other.valuation()
        k = int(v * self.ring.e)
        if self.valuation_lower_bound() < v:
            raise ValidationError(
                "Quotient is not integral", context={"numerator": str(self.valuation_lower_bound()), "denominator": str(v)}
            )
        return self.divide_by_uniformizer(k) * other.divide_by_uniformizer(k).inverse()

    def divide_by_uniformizer(self, k: int) -> "PadicElement":
        """Exact division by pi^k; needs v(self) >= k/e.

        Uses pi^{e j} = p^j w^j: multiply by pi^{e j - k} w^{-j}, then divide
        every coefficient by p^j, losing j digits of precision.
        """
        if k == 0:
            return self
        ring = self.ring
        if self.valuation_lower_bound() < Fraction(k, ring.e):
            raise ValidationError(f"Element is not divisible by pi^{k}")
        j = -(-k // ring.e)
        y = self * ring.pi_power(ring.e * j - k) * (ring._unit_w_inverse**j)
        divisor = ring.p**j
        coeffs = []
        for a in y.coeffs:
            coeffs.append(tuple(x // divisor for x in a))
        return PadicElement(ring, tuple(coeffs), y.prec - j)

    # Valuation and residues

    def is_zero(self) -> bool:
        """True if the element vanishes to its known precision."""
        ring = self.ring
        return all(ring._w_valuation(a, self.prec) is None for a in self.coeffs)

    def valuation(self) -> Fraction:
        """Exact valuation, normalized by v(p) = 1.

        Raises:
            PrecisionError: If every known digit is zero
        """
        ring = self.ring
        best = None
        for i, a in enumerate(self.coeffs):
            v = ring._w_valuation(a, self.prec)
            if v is not None:
                candidate = Fraction(v) + Fraction(i, ring.e)
                best = candidate if best is None else min(best, candidate)
        if best is None:
            raise PrecisionError(
                "Valuation is not determined at working precision",
                context={"prec": self.prec, "cap": ring.cap},
            )
        return best

    def valuation_lower_bound(self) -> Fraction:
        try:
            return self.valuation()
        except PrecisionError:
            return Fraction(self.prec)

    def residue(self) -> FiniteFieldElement:
        """Reduction modulo pi."""
        if self.prec < 1:
            raise PrecisionError("Residue is not determined at working precision")
        ring = self.ring
        return ring.residue_field(tuple(x % ring.p for x in self.coeffs[0]))

    def unit_part(self) -> "PadicElement":
        """self / pi^{e v(self)}"""
        return self.divide_by_uniformizer(int(self.valuation() * self.ring.e))

    def unit_residue(self) -> FiniteFieldElement:
        """Residue of the unit part; nonzero for every nonzero element."""
        return self.unit_part().residue()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = self.ring(other)
        if not isinstance(other, PadicElement) or other.ring is not self.ring:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        try:
            valuation = str(self.valuation())
        except PrecisionError:
            valuation = f">={self.prec}"
        flag = "" if self.is_exact else f", prec={self.prec}"
        return f"PadicElement(v={valuation}{flag})"


class CyclotomicRing(EisensteinRing):
    """Z_p[zeta_{p^n}] for n in {1, 2} with its distinguished elements.

    Attributes:
        level: n
        lam: lambda = zeta_p - 1
        mu: for n = 2, the truncated logarithm pi - pi^2/2 + ... of the uniformizer
    """

    def __init__(self, p: int, level: int, precision: int):
        x = sympy.Symbol("x")
        shifted = sympy.Poly(cyclotomic_poly(p**level, x), x).shift(1)
        coeffs = [int(c) for c in reversed(shifted.all_coeffs())]
        super().__init__(p, coeffs, r=1, precision=precision)
        self.level = level

    @cached_property
    def lam(self) -> PadicElement:
        if self.level == 1:
            return self.pi
        return (1 + self.pi) ** self.p - 1

    @cached_property
    def mu(self) -> PadicElement:
        if self.level != 2:
            raise ValidationError("mu is defined for the level-2 ring only")
        total = self.zero
        for i in range(1, self.p):
            term = self.pi**i * self(Fraction(1, i))
            total = total + term if i % 2 else total - term
        return total


def make_eisenstein_ring(
    p: int, eisenstein: Sequence[int], r: int = 1, precision: int | None = None
) -> EisensteinRing:
    """Build W(F_{p^r})[x]/(E) for an Eisenstein polynomial E (low to high).

    Examples:
        >>> ring = make_eisenstein_ring(5, [-5, 0, 1])  # a^2 = 5
        >>> ring.pi.valuation()
        Fraction(1, 2)
    """
    return EisensteinRing(p, eisenstein, r=r, precision=precision)


def make_cyclotomic_ring(p: int, level: int, precision: int | None = None) -> CyclotomicRing:
    """Build Z_p[zeta_{p^level}] and certify the valuations of lambda and mu.

    Args:
        p: Prime
        level: 1 or 2
        precision: Number of pi-adic digits; at least 3e

    Returns:
        CyclotomicRing with lam (and mu for level 2)

    Raises:
        ValidationError: If level is not 1 or 2
        PrecisionError: If precision is below 3e or the valuations cannot be
            certified
    """
    if level not in (1, 2):
        raise ValidationError(f"Cyclotomic level must be 1 or 2, got {level}")
    if not isprime(p):
        raise ValidationError(f"p must be prime, got {p}", context={"p": p})
    precision = config.DEFAULT_PRECISION if precision is None else precision
    e = (p - 1) * p ** (level - 1)
    if precision < config.MIN_PRECISION_FACTOR * e:
        raise PrecisionError(
            "Precision too small to certify cyclotomic valuations",
            context={"precision": precision, "required": config.MIN_PRECISION_FACTOR * e},
        )
    ring = CyclotomicRing(p, level, precision)

    if ring.lam.valuation() != Fraction(1, p - 1):
        raise PrecisionError("Could not certify v(lambda) = 1/(p-1)")  # pragma: no cover
    if not (ring.lam ** (p - 1) + p).valuation_lower_bound() > 1:
        raise PrecisionError("Could not certify v(lambda^(p-1) + p) > 1")  # pragma: no cover
    if level == 2:
        expected = Fraction(1, p * (p - 1))
        if ring.pi.valuation() != expected or ring.mu.valuation() != expected:
            raise PrecisionError("Could not certify v(pi) = v(mu) = 1/(p(p-1))")  # pragma: no cover
    logger.debug(f"Cyclotomic ring p={p} level={level} e={e} N={precision} certified")
    return ring


def ring_from_json(data: dict, precision: int | None = None) -> EisensteinRing:
    """The ring named by a document: {"p", "cyclotomic": level} or {"p", "eisenstein", "r"}.

    Raises:
        KeyError, TypeError, ValueError: If the fields are missing or malformed
        ValidationError: If the ring itself is invalid
    """
    p = int(data["p"])
    if "cyclotomic" in data:
        return make_cyclotomic_ring(p, int(data["cyclotomic"]), precision=precision)
    return make_eisenstein_ring(p, [int(c) for c in data["eisenstein"]], r=int(data.get("r", 1)), precision=precision)


def element_from_digits(ring: EisensteinRing, coefficients: Sequence) -> "PadicElement":
    """sum_k c_k pi^k for rational c_k."""
    value = ring.zero
    for k, c in enumerate(coefficients):
        c = parse_rational(c)
        if c:
            value = value + ring(c) * ring.pi_power(k)
    return value


def exp_truncated(x: PadicElement) -> PadicElement:
    """sum_{i < p} x^i / i!"""
    ring = x.ring
    total = ring.one
    power = ring.one
    for i in range(1, ring.p):
        power = power * x
        total = total + power * ring(Fraction(1, math.factorial(i)))
    return total

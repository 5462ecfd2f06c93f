"""Higher ramification filtrations, Herbrand conversion and differents.

A filtration is stored as a list of breaks (t_k, o_k) with strictly increasing
thresholds and strictly decreasing orders. The order of G_t is o_k for
t_{k-1} < t <= t_k (with t_0 = -infinity), and 1 beyond the last threshold.
So o_k is the order of the group at its last index before it shrinks.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from sympy import isprime, primefactors

from src.utils.errors import FiltrationError
from src.utils.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)


class Numbering(str, Enum):
    """Index convention of a filtration."""

    LOWER = "lower"
    UPPER = "upper"


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class RamFiltration:
    """Step function t -> |G_t| of a ramification filtration.

    Attributes:
        p: Residue characteristic
        numbering: Lower or upper numbering
        order: |G_0|
        breaks: ((threshold, order), ...) as described in the module docstring
    """

    p: int
    numbering: Numbering
    order: int
    breaks: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_breaks(
        cls, p: int, numbering: Numbering | str, breaks: Sequence[tuple[Any, int]]
    ) -> "RamFiltration":
        """Build a filtration from (threshold, order) pairs; |G_0| is the first order."""
        parsed = tuple((parse_rational(t), int(o)) for t, o in breaks)
        order = parsed[0][1] if parsed else 1
        return cls(p=p, numbering=Numbering(numbering), order=order, breaks=parsed)

    @classmethod
    def cyclic_upper(cls, p: int, jumps: Sequence[Any]) -> "RamFiltration":
        """Upper filtration of Z/p^n with upper jumps u_1 < ... < u_n."""
        values = [parse_rational(u) for u in jumps]
        n = len(values)
        return cls.from_breaks(p, Numbering.UPPER, [(u, p ** (n - i)) for i, u in enumerate(values)])

    def validate(self) -> None:
        """Check the filtration invariants.

        Raises:
            FiltrationError: On any violation
        """
        if not isprime(self.p):
            raise FiltrationError(f"p must be prime, got {self.p}")
        if self.order < 1:
            raise FiltrationError("Group order must be positive")
        if not self.breaks and self.order != 1:
            raise FiltrationError("A nontrivial group needs at least one break", context={"order": self.order})
        previous_t = None
        previous_order = self.order
        for index, (t, o) in enumerate(self.breaks):
            if t < 0:
                raise FiltrationError("Thresholds must be nonnegative", context={"threshold": str(t)})
            if previous_t is not None and t <= previous_t:
                raise FiltrationError("Thresholds must be strictly increasing", context={"threshold": str(t)})
            if index == 0 and o != self.order:
                raise FiltrationError("First recorded order must equal |G_0|", context={"order": self.order})
            if o < 2:
                raise FiltrationError("Recorded orders must exceed 1", context={"order": o})
            if index > 0 and (o >= previous_order or previous_order % o):
                raise FiltrationError(
                    "Orders must strictly decrease and divide each other",
                    context={"previous": previous_order, "order": o},
                )
            if self.numbering is Numbering.LOWER and t.denominator != 1:
                raise FiltrationError("inconsistent filtration: lower jumps must be integers", context={"jump": str(t)})
            previous_t, previous_order = t, o
        # Past the tame break every quotient is elementary abelian of p-power order
        orders = [o for _, o in self.breaks] + [1]
        for (t, o), following in zip(self.breaks, orders[1:]):
            if t > 0 and not _is_power_of(o // following, self.p):
                raise FiltrationError(
                    "Quotients at positive breaks must have p-power order",
                    context={"threshold": str(t), "ratio": o // following},
                )

    # Queries

    def order_at(self, t: Fraction | int) -> int:
        """|G_t|."""
        for threshold, o in self.breaks:
            if t <= threshold:
                return o
        return 1

    def jumps(self) -> list[Fraction]:
        """Positive thresholds, i.e. the wild jumps."""
        return [t for t, _ in self.breaks if t > 0]

    @property
    def is_trivial(self) -> bool:
        return not self.breaks

    # Serialization

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "numbering": self.numbering.value,
            "order": self.order,
            "breaks": [[format_rational(t), o] for t, o in self.breaks],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RamFiltration":
        """Parse a filtration document; "p" may be omitted when a wild break exists.

        Raises:
            FiltrationError: If the document is malformed or p cannot be inferred
        """
        try:
            numbering = Numbering(data["numbering"])
            breaks = tuple((parse_rational(t), int(o)) for t, o in data["breaks"])
            order = int(data["order"])
            p = int(data["p"]) if data.get("p") is not None else infer_residue_characteristic(breaks)
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise FiltrationError(f"Malformed filtration document: {e}") from e
        return cls(p=p, numbering=numbering, order=order, breaks=breaks)


def infer_residue_characteristic(breaks: Sequence[tuple[Fraction, int]]) -> int:
    """The prime p read off the first break with a positive threshold.

    The group there is wild, so its order is a power of p.

    Raises:
        FiltrationError: If there is no positive break or its order is not a prime power
    """
    wild = [o for t, o in breaks if t > 0]
    if not wild:
        raise FiltrationError("Cannot infer p from a filtration without wild breaks; give \"p\" explicitly")
    primes = primefactors(wild[0])
    if len(primes) != 1:
        raise FiltrationError("Wild ramification group must have prime-power order", context={"order": wild[0]})
    return int(primes[0])


# Herbrand functions


def _require(f: RamFiltration, numbering: Numbering) -> None:
    if f.numbering is not numbering:
        raise FiltrationError(f"Expected a {numbering.value} filtration, got {f.numbering.value}")


def phi(f: RamFiltration, t: Fraction) -> Fraction:
    """Herbrand phi(t) = integral_0^t dx / [G_0 : G_x] for a lower filtration."""
    _require(f, Numbering.LOWER)
    t = Fraction(t)
    if t <= 0:
        return t
    total = Fraction(0)
    start = Fraction(0)
    for threshold, o in f.breaks:
        if threshold <= start:
            continue
        end = min(threshold, t)
        total += (end - start) * Fraction(o, f.order)
        start = end
        if start >= t:
            return total
    return total + (t - start) * Fraction(1, f.order)


def psi(f: RamFiltration, v: Fraction) -> Fraction:
    """Inverse Herbrand function, taking the upper filtration as input."""
    _require(f, Numbering.UPPER)
    v = Fraction(v)
    if v <= 0:
        return v
    total = Fraction(0)
    start = Fraction(0)
    for threshold, o in f.breaks:
        if threshold <= start:
            continue
        end = min(threshold, v)
        total += (end - start) * Fraction(f.order, o)
        start = end
        if start >= v:
            return total
    return total + (v - start) * f.order


def herbrand_upper_from_lower(f: RamFiltration) -> RamFiltration:
    """Renumber a lower filtration by phi; orders are preserved segmentwise."""
    _require(f, Numbering.LOWER)
    breaks = tuple((phi(f, t), o) for t, o in f.breaks)
    return RamFiltration(p=f.p, numbering=Numbering.UPPER, order=f.order, breaks=breaks)


def herbrand_lower_from_upper(f: RamFiltration) -> RamFiltration:
    """Renumber an upper filtration by psi.

    Raises:
        FiltrationError: "inconsistent filtration" when a lower jump is not an
            integer
    """
    _require(f, Numbering.UPPER)
    breaks = []
    for t, o in f.breaks:
        lower = psi(f, t)
        if lower.denominator != 1:
            raise FiltrationError(
                "inconsistent filtration",
                context={"upper_jump": format_rational(t), "lower_jump": format_rational(lower)},
            )
        breaks.append((lower, o))
    return RamFiltration(p=f.p, numbering=Numbering.LOWER, order=f.order, breaks=tuple(breaks))


# Differents


def different_from_lower(f: RamFiltration) -> int:
    """delta = sum over integers i >= 0 of (|G_i| - 1)."""
    _require(f, Numbering.LOWER)
    total = 0
    covered = -1  # last integer index already summed
    for threshold, o in f.breaks:
        last = int(threshold)
        total += (o - 1) * (last - covered)
        covered = last
    return total


def different_from_upper(f: RamFiltration) -> int:
    return different_from_lower(herbrand_lower_from_upper(f))


def cyclic_different(p: int, jumps: Sequence[Any]) -> Fraction:
    """Different of Z/p^n with upper jumps u_1 < ... < u_n.

    p^n - 1 + sum_i p^{i-1} (p^{n-i+1} - 1) (u_i - u_{i-1}), with u_0 = 0.

    Raises:
        FiltrationError: If the jumps are not positive and strictly increasing
    """
    values = [parse_rational(u) for u in jumps]
    if not values:
        raise FiltrationError("At least one jump is required")
    previous = Fraction(0)
    for u in values:
        if u <= previous:
            raise FiltrationError(
                "Jumps must be positive and strictly increasing",
                context={"jumps": ",".join(format_rational(u) for u in values)},
            )
        previous = u
    n = len(values)
    total = Fraction(p**n - 1)
    previous = Fraction(0)
    for i, u in enumerate(values, start=1):
        total += p ** (i - 1) * (p ** (n - i + 1) - 1) * (u - previous)
        previous = u
    return total


def compose_tame(f: RamFiltration, m: int) -> RamFiltration:
    """Lower filtration of Z/m p^n from that of its wild part Z/p^n.

    The composed group has G_0 of order m p^n, and G_{m i} equals the input
    G_i for i >= 1; its different is m delta + m - 1.

    Raises:
        FiltrationError: If p divides m or the input is not wild
    """
    _require(f, Numbering.LOWER)
    if m < 1 or m % f.p == 0:
        raise FiltrationError(f"Tame degree must be prime to p, got m={m}", context={"p": f.p})
    if not _is_power_of(f.order, f.p):
        raise FiltrationError("Input must be the filtration of a p-group", context={"order": f.order})
    if f.breaks and f.breaks[0][0] == 0:
        raise FiltrationError("Input p-group filtration cannot break at 0")
    if m == 1:
        return f
    breaks = [(Fraction(0), m * f.order)] + [(m * t, o) for t, o in f.breaks]
    composed = RamFiltration(p=f.p, numbering=Numbering.LOWER, order=m * f.order, breaks=tuple(breaks))
    logger.debug(f"Composed tame degree {m} onto filtration {f.breaks}")
    return composed

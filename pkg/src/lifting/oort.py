"""Sufficient condition on upper jumps for a Z/p^n-extension to lift."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from src.asw import jump_constraints_hold
from src.utils.errors import ValidationError
from src.utils.rationals import parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OortVerdict:
    """Result of the jump condition.

    Attributes:
        holds: True if no index admits an obstructing multiple of p
        index: First failing index i (1-based), None when the condition holds
        value: The multiple a_i of p found in the window
    """

    holds: bool
    index: Optional[int] = None
    value: Optional[int] = None

    def to_json(self) -> dict:
        return {"holds": self.holds, "index": self.index, "value": self.value}


def obstruction_window(p: int, jumps: Sequence[int], i: int) -> tuple[int, Fraction]:
    """(u_i - p u_{i-1}, (u_i - p u_{i-1}) u_i / (u_i - u_{i-1})) for 1-based i >= 2."""
    u, previous = jumps[i - 1], jumps[i - 2]
    low = u - p * previous
    return low, Fraction(low * u, u - previous)


def step_obstruction(p: int, jumps: Sequence[int], i: int) -> Optional[int]:
    """Smallest a in pZ with low < a <= high in the window of index i, or None."""
    low, high = obstruction_window(p, jumps, i)
    a = (low // p + 1) * p
    return a if a <= high else None


def oort_condition(p: int, jumps: Sequence[Any]) -> OortVerdict:
    """Check the jump condition at every index 3 <= i <= n - 1.

    For n <= 3 there is nothing to check, so every Z/p^3-extension passes.

    Raises:
        ValidationError: If the jumps are not valid upper jumps of Z/p^n

    Examples:
        >>> oort_condition(5, [1, 5, 34, 170])
        OortVerdict(holds=False, index=3, value=10)
    """
    values = [parse_rational(u) for u in jumps]
    if not jump_constraints_hold(p, values):
        raise ValidationError("Upper jumps violate the constraints for Z/p^n", context={"p": p, "jumps": list(jumps)})
    ints = [int(u) for u in values]
    for i in range(3, len(ints)):
        a = step_obstruction(p, ints, i)
        if a is not None:
            logger.info(f"Jump condition fails at i={i} with a={a} for jumps {ints}")
            return OortVerdict(False, i, a)
    return OortVerdict(True)


def minimal_jumps(p: int, u1: int, n: int) -> tuple[int, ...]:
    """(u_1, p u_1, ..., p^{n-1} u_1)

    Raises:
        ValidationError: If p divides u_1 or n < 1
    """
    if n < 1:
        raise ValidationError(f"Length must be positive, got n={n}")
    if u1 < 1 or u1 % p == 0:
        raise ValidationError(f"u_1 must be positive and prime to p (u_1={u1}, p={p})")
    return tuple(u1 * p**k for k in range(n))

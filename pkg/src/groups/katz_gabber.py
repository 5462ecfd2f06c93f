"""Wild filtrations of the Katz-Gabber covers used in the KGB comparison."""

import logging
from fractions import Fraction
from typing import Sequence

from src.groups.base import ElementaryBicyclic, MetacyclicGroup
from src.ramification.filtration import Numbering, RamFiltration, herbrand_lower_from_upper
from src.ramification.subgroups import SubgroupFiltration
from src.utils.errors import FiltrationError
from src.utils.rationals import parse_rational

logger = logging.getLogger(__name__)


def elementary_bicyclic_filtration(group: ElementaryBicyclic, m1: int, m2: int) -> SubgroupFiltration:
    """G_j = G for j <= m1, G_j = <(1,0)> for m1 < j <= m2, trivial after.

    Raises:
        FiltrationError: Unless 1 <= m1 <= m2, p does not divide m1 and m1 = m2 mod p
    """
    p = group.p
    if not 1 <= m1 <= m2:
        raise FiltrationError("Lower jumps must satisfy 1 <= m1 <= m2", context={"m1": m1, "m2": m2})
    if m1 % p == 0:
        raise FiltrationError(f"p must not divide the first lower jump (m1={m1})")
    if (m2 - m1) % p:
        raise FiltrationError("Lower jumps of (Z/p)^2 must be congruent mod p", context={"m1": m1, "m2": m2})
    whole = frozenset(group.elements)
    if m1 == m2:
        return SubgroupFiltration(group, ((Fraction(m1), whole),))
    axis = frozenset((a, 0) for a in range(p))
    return SubgroupFiltration(group, ((Fraction(m1), whole), (Fraction(m2), axis)))


def minimal_upper_jumps(p: int, n: int, m: int, h: int) -> tuple[Fraction, ...]:
    """Upper jumps (h/m, p h/m, ..., p^{n-1} h/m) of the smallest filtration with first lower jump h."""
    if h < 1 or h % p == 0:
        raise FiltrationError(f"First lower jump must be positive and prime to p (h={h})")
    first = Fraction(h, m)
    return tuple(first * p**i for i in range(n))


def metacyclic_filtration(group: MetacyclicGroup, upper_jumps: Sequence) -> SubgroupFiltration:
    """Lower filtration of Z/p^n x| Z/m with the given upper jumps of P.

    G_0 = G, then G^u = P for 0 < u <= u_1 and the subgroup of order
    p^{n-i+1} for u_{i-1} < u <= u_i. The lower thresholds come from psi.

    Raises:
        FiltrationError: If the jumps do not fit n or give non-integral lower jumps
    """
    jumps = [parse_rational(u) for u in upper_jumps]
    if len(jumps) != group.n:
        raise FiltrationError(f"Expected {group.n} upper jumps, got {len(jumps)}")
    if jumps[0] <= 0:
        raise FiltrationError("Upper jumps must be positive")
    p, n, m = group.p, group.n, group.m
    breaks: list[tuple[Fraction, int]] = []
    if m > 1:
        breaks.append((Fraction(0), m * p**n))
    breaks.extend((u, p ** (n - i)) for i, u in enumerate(jumps))
    upper = RamFiltration.from_breaks(p, Numbering.UPPER, breaks)
    lower = herbrand_lower_from_upper(upper)

    def subgroup_of_order(order: int) -> frozenset:
        if order == group.order:
            return frozenset(group.elements)
        k = 0
        while p**k < order:
            k += 1
        return group.p_subgroup(k)

    result = SubgroupFiltration(group, tuple((t, subgroup_of_order(o)) for t, o in lower.breaks))
    logger.debug(f"{group.name}: lower breaks {[(str(t), o) for t, o in lower.breaks]}")
    return result

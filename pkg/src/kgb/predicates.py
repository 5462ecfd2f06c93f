"""Closed-form KGB vanishing criteria for (Z/p)^2 and Z/p^n x| Z/m."""

import logging

from sympy import isprime

from src.groups.base import MetacyclicGroup
from src.kgb.models import KgbVerdict
from src.utils.errors import KgbError, ValidationError

logger = logging.getLogger(__name__)


def check_zpzp_jumps(p: int, m1: int, m2: int) -> None:
    """Validate lower jumps (m1, m2) of a (Z/p)^2-extension.

    Raises:
        ValidationError: If p is not an odd prime or the jumps are not admissible
    """
    if p == 2 or not isprime(p):
        raise ValidationError(f"p must be an odd prime, got {p}")
    if not 1 <= m1 <= m2:
        raise ValidationError("Lower jumps must satisfy 1 <= m1 <= m2", context={"m1": m1, "m2": m2})
    if m1 % p == 0:
        raise ValidationError(f"p must not divide m1 (m1={m1})")
    if (m2 - m1) % p:
        raise ValidationError("m1 and m2 must be congruent mod p", context={"m1": m1, "m2": m2})


def kgb_zpzp(p: int, m1: int, m2: int) -> KgbVerdict:
    """The obstruction vanishes iff m1 = -1 mod p, except for (3, 2, 2)."""
    check_zpzp_jumps(p, m1, m2)
    vanishes = m1 % p == p - 1 and (p, m1, m2) != (3, 2, 2)
    logger.info(f"KGB (Z/{p})^2 with jumps ({m1}, {m2}): vanishes={vanishes}")
    return KgbVerdict(vanishes=vanishes)


def kgb_metacyclic(p: int, n: int, m: int, c: int, h: int) -> KgbVerdict:
    """Criterion for G = Z/p^n x| Z/m with chi(1) = c and first positive lower jump h.

    The obstruction vanishes iff h = -1 mod m. A vanishing obstruction forces the
    conjugation action to be faithful, so h = -1 mod m with a non-faithful chi
    describes no extension at all.

    Raises:
        KgbError: If G is cyclic, or h = -1 mod m while chi is not faithful
        ValidationError: If h is not a positive integer prime to p
    """
    group = MetacyclicGroup(p, n, m, c)
    if group.is_cyclic:
        raise KgbError("G is cyclic: use cyclic path", context={"p": p, "n": n, "m": m, "c": c})
    if h < 1 or h % p == 0:
        raise ValidationError(f"First lower jump must be positive and prime to p (h={h})")
    vanishes = h % m == m - 1
    faithful = group.is_faithful
    if vanishes and not faithful:
        raise KgbError(
            "h = -1 mod m requires a faithful conjugation action",
            context={"c": c, "m": m, "h": h},
        )
    logger.info(f"KGB {group.name} with h={h}: vanishes={vanishes}")
    return KgbVerdict(vanishes=vanishes, faithful=faithful)

"""Kummer chains Z_1^p = H_1(T), Z_i^p = Z_{i-1} H_i(T) and their branch loci.

Each H_i is a polynomial in T^{-1} with coefficients in a cyclotomic (or
Eisenstein) ring. The generic fiber of the chain is a Z/p^n-cover of the open
unit disc, branched at T = 0 and at the zeros of the H_i inside the disc.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.padic import (
    EisensteinRing,
    RootCertificate,
    ValuedLaurentPoly,
    exp_truncated,
    make_cyclotomic_ring,
    newton_polygon,
    roots_simple_distinct_certificate,
)
from src.utils.errors import LiftError
from src.utils.rationals import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KummerChain:
    """A Z/p^n-extension of R[[T]] in the general Kummer form.

    Attributes:
        p: Residue characteristic
        ring: Coefficient ring R, containing the p^n-th roots of unity
        polys: H_1, ..., H_n as polynomials in T^{-1}
    """

    p: int
    ring: EisensteinRing
    polys: tuple[ValuedLaurentPoly, ...]

    def __post_init__(self):
        if not self.polys:
            raise LiftError("A Kummer chain needs at least one polynomial")
        if self.ring.p != self.p:
            raise LiftError(f"Ring has residue characteristic {self.ring.p}, expected {self.p}")
        for i, h in enumerate(self.polys, start=1):
            if h.ring is not self.ring:
                raise LiftError(f"H_{i} is defined over a different ring")
            if not h.is_normalized():
                raise LiftError(
                    f"H_{i} is not normalized: need a unit constant term and positive valuation elsewhere",
                    context={"index": i},
                )

    @property
    def n(self) -> int:
        return len(self.polys)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(h.degree for h in self.polys)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "H": [h.to_dict() for h in self.polys]}


@dataclass(frozen=True)
class BranchRow:
    """Branch points of the generic fiber sharing a valuation and an inertia order.

    Attributes:
        valuation: v(T) at the points; None for the pole T = 0
        count: Number of points
        index: Order of the inertia group at each point
    """

    valuation: Optional[Fraction]
    count: int
    index: int

    def contribution(self, order: int) -> int:
        """Different contribution: order / index points above each branch point, index - 1 each."""
        return self.count * (order // self.index) * (self.index - 1)

    def to_json(self) -> list:
        valuation = "inf" if self.valuation is None else format_rational(self.valuation)
        return [valuation, self.count, self.index]


@dataclass(frozen=True)
class GenericDifferent:
    """Degree of the different of the generic fiber, or an upper bound for it.

    Attributes:
        value: The different degree (exact) or the bound
        exact: True when all zeros were certified simple and pairwise distinct
        rows: Branch table, pole last
        certificate: Outcome of the root certificate
    """

    value: Fraction
    exact: bool
    rows: tuple[BranchRow, ...]
    certificate: RootCertificate

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "exact": self.exact,
            "branch_table": [row.to_json() for row in self.rows],
            "certificate": self.certificate.to_dict(),
        }


def _check_jump(p: int, u: int) -> None:
    if u < 1:
        raise LiftError(f"The jump must be positive, got u={u}")
    if u % p == 0:
        raise LiftError(f"The jump must be prime to p (u={u}, p={p})", context={"p": p, "u": u})


def build_zp_lift(p: int, u: int, precision: int | None = None) -> KummerChain:
    """Lift of y^p - y = t^{-u}: Z^p = 1 + lambda^p T^{-u} over Z_p[zeta_p].

    Raises:
        LiftError: If p divides u or u < 1
    """
    _check_jump(p, u)
    ring = make_cyclotomic_ring(p, 1, precision)
    h1 = ValuedLaurentPoly(ring, {0: ring.one, u: ring.lam**p})
    logger.debug(f"Built Z/{p} lift with u={u}")
    return KummerChain(p, ring, (h1,))


def build_zp2_lift(p: int, u: int, precision: int | None = None) -> KummerChain:
    """Lift of the Z/p^2-extension with upper jumps (u, p u).

    H_1 = 1 + lambda^p T^{-u} and H_2 = exp_p(mu^p T^{-u}), the truncated
    exponential, over Z_p[zeta_{p^2}]. deg H_2 = (p - 1) u.

    Raises:
        LiftError: If p divides u or u < 1
    """
    _check_jump(p, u)
    ring = make_cyclotomic_ring(p, 2, precision)
    h1 = ValuedLaurentPoly(ring, {0: ring.one, u: ring.lam**p})
    h2 = exp_truncated(ValuedLaurentPoly.monomial(ring, 1, ring.mu**p)).substitute_power(u)
    logger.debug(f"Built Z/{p}^2 lift with u={u}, deg H_2={h2.degree}")
    return KummerChain(p, ring, (h1, h2))


def branch_table(chain: KummerChain) -> tuple[tuple[BranchRow, ...], bool]:
    """Branch rows of the chain and whether the pole is certainly branched.

    A zero of H_i is fixed by the subgroup of order p^{n-i+1}. The pole T = 0
    is totally ramified when p does not divide deg H_1.
    """
    p, n = chain.p, chain.n
    rows: list[BranchRow] = []
    for i, h in enumerate(chain.polys, start=1):
        index = p ** (n - i + 1)
        for segment in newton_polygon(h).segments:
            if segment.root_valuation > 0:
                rows.append(BranchRow(segment.root_valuation, segment.length, index))
    pole_order = chain.polys[0].degree
    pole_certain = pole_order > 0 and pole_order % p != 0
    if pole_order > 0:
        rows.append(BranchRow(None, 1, p**n))
    return tuple(rows), pole_certain


def generic_different(chain: KummerChain) -> GenericDifferent:
    """Different degree of the generic fiber of the chain.

    Every zero in the open disc is counted through the Newton polygons. When
    the root certificate fails (or the pole might not be branched) the sum is
    only an upper bound: shared or repeated zeros are counted more than once.

    Examples:
        >>> generic_different(build_zp_lift(3, 2)).value
        Fraction(6, 1)
    """
    order = chain.p**chain.n
    rows, pole_certain = branch_table(chain)
    certificate = roots_simple_distinct_certificate(list(chain.polys))
    value = Fraction(sum(row.contribution(order) for row in rows))
    exact = certificate.certified and pole_certain
    logger.info(f"Generic different {value} ({'exact' if exact else 'bound'}) for n={chain.n}, p={chain.p}")
    return GenericDifferent(value=value, exact=exact, rows=rows, certificate=certificate)


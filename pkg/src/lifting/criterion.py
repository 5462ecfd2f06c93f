"""The different criterion for lifts and the worked examples it certifies."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from src.algebra import FiniteFieldElement, LaurentPoly
from src.asw import jump_constraints_hold
from src.lifting.kummer import BranchRow, KummerChain, build_zp_lift, generic_different
from src.ramification import Numbering, RamFiltration, cyclic_different, different_from_lower
from src.utils.errors import LiftError, ValidationError
from src.utils.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)


class LiftStatus(str, Enum):
    """Outcome of comparing the generic and special differents."""

    LIFT_CERTIFIED = "lift-certified"
    BOUND_ONLY = "bound-only"
    NOT_A_LIFT = "not-a-lift"


@dataclass(frozen=True)
class DifferentCertificate:
    """Generic-fiber and special-fiber different degrees with a verdict.

    Attributes:
        delta_eta: Different degree of the generic fiber (or its upper bound)
        delta_s: Different degree of the special fiber
        status: LiftStatus
        branch_table: Branch rows behind delta_eta
    """

    delta_eta: Fraction
    delta_s: Fraction
    status: LiftStatus
    branch_table: tuple[BranchRow, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.status is LiftStatus.LIFT_CERTIFIED and self.delta_eta != self.delta_s:
            raise LiftError(
                "A certified lift needs equal differents",
                context={"delta_eta": self.delta_eta, "delta_s": self.delta_s},
            )

    @property
    def is_lift(self) -> bool:
        return self.status is LiftStatus.LIFT_CERTIFIED

    def to_json(self) -> dict:
        return {
            "delta_eta": format_rational(self.delta_eta),
            "delta_s": format_rational(self.delta_s),
            "status": self.status.value,
            "branch_table": [row.to_json() for row in self.branch_table],
        }


def _parse_jumps(p: int, n: int, jumps: Sequence[Any]) -> tuple[int, ...]:
    values = [parse_rational(u) for u in jumps]
    if len(values) != n:
        raise ValidationError(f"Expected {n} upper jumps, got {len(values)}")
    if not jump_constraints_hold(p, values):
        raise ValidationError(
            "Upper jumps violate the constraints for Z/p^n",
            context={"p": p, "jumps": ",".join(format_rational(u) for u in values)},
        )
    return tuple(int(u) for u in values)


def different_criterion(chain: KummerChain, jumps: Sequence[Any], check_degrees: bool = False) -> DifferentCertificate:
    """Compare the different of the generic fiber with that of the target.

    The special fiber of a lift of a Z/p^n-extension with upper jumps u_i has
    different delta_s; the chain is a lift exactly when its generic different
    delta_eta equals delta_s. Without the root certificate delta_eta is only an
    upper bound, which can still refute a lift when it falls below delta_s.

    Args:
        chain: The candidate lift
        jumps: Upper jumps (u_1, ..., u_n) of the special fiber
        check_degrees: Also require deg H_i = u_i - u_{i-1}

    Raises:
        ValidationError: If the jumps are invalid for Z/p^n
        LiftError: If check_degrees is set and a degree does not match
    """
    values = _parse_jumps(chain.p, chain.n, jumps)
    if check_degrees:
        expected = tuple(u - previous for previous, u in zip((0,) + values, values))
        if chain.degrees != expected:
            raise LiftError(
                "deg H_i must equal u_i - u_{i-1}",
                context={"degrees": list(chain.degrees), "expected": list(expected)},
            )
    delta_s = cyclic_different(chain.p, values)
    generic = generic_different(chain)
    if generic.exact:
        status = LiftStatus.LIFT_CERTIFIED if generic.value == delta_s else LiftStatus.NOT_A_LIFT
    elif generic.value < delta_s:
        status = LiftStatus.NOT_A_LIFT
    else:
        status = LiftStatus.BOUND_ONLY
    logger.info(f"Different criterion: delta_eta={generic.value} delta_s={delta_s} -> {status.value}")
    return DifferentCertificate(generic.value, delta_s, status, generic.rows)


@dataclass(frozen=True)
class ZpReduction:
    """Special fiber of Z^p = H_1 after Z = 1 + lambda Y.

    Attributes:
        y_coefficients: Residues of binom(p, k) lambda^{k - p} for k = 1, ..., p
        rhs: Residue of (H_1 - 1) / lambda^p as a Laurent polynomial in t
    """

    y_coefficients: dict[int, FiniteFieldElement]
    rhs: LaurentPoly

    @property
    def is_artin_schreier(self) -> bool:
        """True when the left side reduces to Y^p - Y."""
        for k, c in self.y_coefficients.items():
            target = 1 if k == self.rhs.field.p else (-1 if k == 1 else 0)
            if c != self.rhs.field(target):
                return False
        return True


def zp_reduction(chain: KummerChain) -> ZpReduction:
    """Reduce the first step of the chain modulo the uniformizer.

    Substituting Z = 1 + lambda Y in Z^p = H_1 and dividing by lambda^p leaves
    Y^p - Y = (H_1 - 1) / lambda^p modulo pi, because lambda^{p-1} = -p up to
    higher order.

    Raises:
        LiftError: If H_1 does not have constant term 1 or (H_1 - 1) / lambda^p
            is not integral
    """
    ring = chain.ring
    lam = getattr(ring, "lam", None)
    if lam is None:
        raise LiftError("Reduction needs a cyclotomic coefficient ring")
    p = chain.p
    h1 = chain.polys[0]
    if h1.is_symbolic:
        raise LiftError("Reduction needs exact coefficients")
    if h1.coefficient(0) != ring.one:
        raise LiftError("H_1 must have constant term exactly 1")
    lam_p = lam**p
    y_coefficients = {k: ((ring(math.comb(p, k)) * lam**k) / lam_p).residue() for k in range(1, p + 1)}
    terms: dict[int, FiniteFieldElement] = {}
    for k, a in h1.items():
        if k == 0:
            continue
        if a.valuation() < lam_p.valuation():
            raise LiftError(f"(H_1 - 1) / lambda^p is not integral at T^-{k}")
        terms[-k] = (a / lam_p).residue()
    rhs = LaurentPoly(ring.residue_field, terms)
    logger.debug(f"Reduced Z/p step to y^p - y = {rhs}")
    return ZpReduction(y_coefficients, rhs)


def dihedral_example_check(p: int, precision: int | None = None) -> DifferentCertificate:
    """Certify the D_p-lift (X + lambda^p / 2)^2 = T, Z^p = 1 + lambda^p X^{-1}.

    The special fiber x^2 = t, y^p - y = x^{-1} has lower breaks 0 and 1, so
    delta_s = 3p - 2. On the generic fiber the Z/p-cover of the X-disc is
    branched at X = 0 and X = -lambda^p, which both map to T = lambda^{2p} / 4
    (index p); the double cover adds T = 0 (index 2), which is unbranched in
    the Z/p-cover and so has p preimages.

    Raises:
        ValidationError: If p is not an odd prime
    """
    if p % 2 == 0:
        raise ValidationError(f"The dihedral example needs an odd prime, got {p}")
    chain = build_zp_lift(p, 1, precision)
    ring = chain.ring
    half = ring(Fraction(1, 2)) * ring.lam**p
    square_at_pole = half * half
    square_at_zero = (half - ring.lam**p) * (half - ring.lam**p)
    if square_at_pole != square_at_zero:
        raise LiftError("Branch points of the Z/p-cover do not share an image")  # pragma: no cover

    zp_part = generic_different(chain)
    order = 2 * p
    rows = (
        BranchRow(square_at_pole.valuation(), 1, p),
        BranchRow(None, 1, 2),
    )
    delta_eta = zp_part.value + sum(row.contribution(order) for row in rows if row.index == 2)
    if delta_eta != sum(row.contribution(order) for row in rows):
        raise LiftError("Branch table of the dihedral lift is inconsistent")  # pragma: no cover

    special = RamFiltration.from_breaks(p, Numbering.LOWER, [(0, order), (1, p)])
    delta_s = Fraction(different_from_lower(special))
    status = LiftStatus.LIFT_CERTIFIED if zp_part.exact and delta_eta == delta_s else LiftStatus.NOT_A_LIFT
    logger.info(f"Dihedral example p={p}: delta_eta={delta_eta}, delta_s={delta_s}")
    return DifferentCertificate(delta_eta, delta_s, status, rows)

"""Hurwitz trees with conductor h < p on a single smooth component."""

import logging
from fractions import Fraction
from typing import Optional, Sequence

from sympy import isprime, primitive_root

from src.algebra import INFINITY, FiniteField, Mobius, Poly, RationalDifferentialForm, RationalFunction
from src.hurwitz.tree import ROOT, Component, Edge, HurwitzTree
from src.utils.errors import ValidationError

logger = logging.getLogger(__name__)


def _order_mod(x: int, p: int) -> Optional[int]:
    x %= p
    if not x:
        return None
    return next(k for k in range(1, p) if pow(x, k, p) == 1)


def default_character(p: int, m: int) -> int:
    """chi(c) = g^{(p-1)/m} for the least primitive root g mod p."""
    return pow(int(primitive_root(p)), (p - 1) // m, p)


def _orbit(z: int, zeta: int, m: int, p: int) -> list[int]:
    return [pow(zeta, j, p) * z % p for j in range(m)]


def default_points(p: int, m: int, h: int, chi: int) -> list[int]:
    """The least z_1 < ... < z_r in F_p^x with disjoint zeta orbits."""
    r = (h + 1) // m
    chosen: list[int] = []
    used: set[int] = set()
    for z in range(1, p):
        if z in used:
            continue
        chosen.append(z)
        used.update(_orbit(z, chi, m, p))
        if len(chosen) == r:
            break
    return chosen


def _check_parameters(p: int, m: int, h: int) -> None:
    if not isprime(p) or p < 3:
        raise ValidationError(f"p must be an odd prime, got {p}")
    if m < 1 or (p - 1) % m:
        raise ValidationError(f"m must divide p - 1 (p={p}, m={m})")
    if (h + 1) % m:
        raise ValidationError(f"h must be -1 mod m (h={h}, m={m})")
    if not 1 < h < p:
        raise ValidationError(f"The smooth construction needs 1 < h < p (h={h}, p={p})")
    if h == p - 1:
        raise ValidationError(f"h = p - 1 = {h} leaves no room for the marked points")


def build_small_conductor(
    p: int, m: int, h: int, chi: Optional[int] = None, z: Optional[Sequence[int]] = None
) -> HurwitzTree:
    """Single-component Hurwitz tree of type (Z/m, chi) with conductor h.

    delta = 1 on the component, epsilon = 1 / (h (p - 1)) on the root edge,
    marked points z_{i,j} = zeta^j z_i with zeta = chi(c), infinity' at z = inf,
    omega = dz / prod_i (z^m - z_i^m) and c acting by z -> zeta z.

    Args:
        p: Odd prime
        m: Order of C, dividing p - 1
        h: Conductor, h = -1 mod m and 1 < h < p - 1
        chi: chi(c) in F_p^x of order exactly m; default_character if omitted
        z: Orbit representatives z_1, ..., z_r with r = (h + 1) / m; default_points if omitted

    Raises:
        ValidationError: If a precondition fails or the chosen points collide
            under multiplication by zeta

    Examples:
        >>> tree = build_small_conductor(5, 2, 3, chi=4, z=[1, 2])
        >>> tree.components["v1"].form.to_string()
        '(1/(z^4 + 4)) dz'
    """
    _check_parameters(p, m, h)
    zeta = default_character(p, m) if chi is None else chi % p
    if _order_mod(zeta, p) != m:
        raise ValidationError(f"chi(c) = {chi} must have order m = {m} in F_{p}^x")
    r = (h + 1) // m
    reps = default_points(p, m, h, zeta) if z is None else [int(x) % p for x in z]
    if len(reps) != r:
        raise ValidationError(f"Expected r = (h + 1) / m = {r} points, got {len(reps)}")
    if 0 in reps:
        raise ValidationError("The points z_i must be nonzero")
    marked = [x for zi in reps for x in _orbit(zi, zeta, m, p)]
    if len(set(marked)) != len(marked):
        raise ValidationError(
            "The points z_i collide under multiplication by chi(c)",
            context={"z": ",".join(str(x) for x in reps), "chi": zeta},
        )

    field = FiniteField(p)
    zvar = Poly.x(field)
    denominator = Poly.constant(field, 1)
    for zi in reps:
        denominator = denominator * (zvar**m - field(zi) ** m)
    form = RationalDifferentialForm(RationalFunction(Poly.constant(field, 1), denominator))

    tree = HurwitzTree(
        p=p,
        m=m,
        chi=zeta,
        field=field,
        components={"v1": Component(form=form, delta=Fraction(1), marked=tuple(field(x) for x in marked))},
        edges=(Edge(parent=ROOT, child="v1", thickness=Fraction(1, h * (p - 1)), child_point=INFINITY),),
        action={"v1": ("v1", Mobius.scaling(field(zeta)))},
    )
    logger.info(f"Built Hurwitz tree p={p} m={m} h={h} chi={zeta} z={reps}")
    return tree

"""Branch cycle descriptions and ramification divisors on both sides of the KGB comparison."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from src.groups.base import Element, FiniteGroup
from src.ramification.subgroups import SubgroupFiltration
from src.utils.errors import GroupError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BranchCycleDescription:
    """A generating tuple (g_1, ..., g_s) of non-identity elements with product one.

    Attributes:
        group: Ambient group
        elements: The tuple, one element per branch point of the cover
    """

    group: FiniteGroup
    elements: tuple[Element, ...]

    def __post_init__(self):
        group = self.group
        if not self.elements:
            raise GroupError("A branch cycle description needs at least one element")
        for g in self.elements:
            if not group.contains(g):
                raise GroupError(f"{g} is not an element of {group.name}")
            if g == group.identity:
                raise GroupError("Branch cycles must be non-identity elements")
        if group.product(self.elements) != group.identity:
            raise GroupError("Product of the branch cycles is not the identity")
        if len(group.generated_by(self.elements)) != group.order:
            raise GroupError("Branch cycles do not generate the group")

    @classmethod
    def from_lists(cls, group: FiniteGroup, elements: Sequence[Sequence[int]]) -> "BranchCycleDescription":
        return cls(group, tuple(group.element(g) for g in elements))

    def orders(self) -> list[int]:
        return [self.group.element_order(g) for g in self.elements]

    def to_json(self) -> list[list[int]]:
        return [list(g) for g in self.elements]


def point_contribution(group: FiniteGroup, g: Element, subgroup: frozenset) -> int:
    """Contribution of one branch point with inertia generator g to deg R of X -> X/H.

    The points above it are the cosets a<g>, with stabilizers a<g>a^-1; each
    contributes |H cap a<g>a^-1| - 1.
    """
    inertia = group.cyclic_subgroup(g)
    total = 0
    for a in group.left_coset_representatives(inertia):
        conjugate = frozenset(group.conjugate(x, a) for x in inertia)
        total += len(subgroup & conjugate) - 1
    return total


def ram_divisor_char0(bcd: BranchCycleDescription, subgroup: frozenset) -> int:
    """deg R_X for the characteristic-zero cover X with the given description."""
    return sum(point_contribution(bcd.group, g, subgroup) for g in bcd.elements)


def tame_hurwitz_count(bcd: BranchCycleDescription) -> int:
    """sum_i (|G| / ord g_i)(ord g_i - 1), which equals deg R_X for H = G."""
    order = bcd.group.order
    return sum(order // k * (k - 1) for k in bcd.orders())


def ram_divisor_charp(group: FiniteGroup, wild: SubgroupFiltration, subgroup: frozenset) -> int:
    """deg R_Y of Y -> Y/H for the Katz-Gabber cover Y.

    Y is totally ramified over t = 0 with filtration `wild`, giving
    sum_{j >= 0} (|H cap G_j| - 1), and tamely ramified over infinity with inertia
    the tame complement, contributing over each point above it.

    Raises:
        GroupError: If the filtration does not start with G_0 = G
    """
    if wild.group != group:
        raise GroupError("Filtration belongs to a different group")
    if not wild.breaks or len(wild.breaks[0][1]) != group.order:
        raise GroupError("The wild point of the Katz-Gabber cover must have G_0 = G")
    tame = 0
    if len(group.tame_inertia) > 1:
        inertia = group.tame_inertia
        for a in group.left_coset_representatives(inertia):
            conjugate = frozenset(group.conjugate(x, a) for x in inertia)
            tame += len(subgroup & conjugate) - 1
    return wild.intersection_different(subgroup) + tame


# Closed forms from the two KGB proofs, used as cross-checks


def metacyclic_charp_closed_form(p: int, n: int, m: int, upper_jumps: Sequence, n_prime: int, m_prime: int) -> Fraction:
    """p^{n'}(m'-1) + p^{n'}m' - 1 + sum_i m p^{i-1}(u_i - u_{i-1})(p^{min(n', n-i+1)} - 1)."""
    total = Fraction(p**n_prime * (m_prime - 1) + p**n_prime * m_prime - 1)
    previous = Fraction(0)
    for i, u in enumerate(upper_jumps, start=1):
        total += m * p ** (i - 1) * (Fraction(u) - previous) * (p ** min(n_prime, n - i + 1) - 1)
        previous = Fraction(u)
    return total


def metacyclic_char0_closed_form(p: int, n: int, m: int, upper_jumps: Sequence, n_prime: int, m_prime: int) -> Fraction:
    """2p^{n'}(m'-1) + sum_i r_i m p^{i-1}(p^{min(n', n-i+1)} - 1), r_1 = u_1 + 1/m, r_i = u_i - u_{i-1}."""
    total = Fraction(2 * p**n_prime * (m_prime - 1))
    previous = Fraction(0)
    for i, u in enumerate(upper_jumps, start=1):
        r = Fraction(u) + Fraction(1, m) if i == 1 else Fraction(u) - previous
        total += r * m * p ** (i - 1) * (p ** min(n_prime, n - i + 1) - 1)
        previous = Fraction(u)
    return total


def bicyclic_closed_form(p: int, m1: int, m2: int, subgroup_order: int, contains_first_axis: bool) -> dict[str, Fraction]:
    """Both divisor degrees for (Z/p)^2 with lower jumps (m1, m2).

    Returns:
        {"char0": deg R_X, "charp": deg R_Y} for the witness shape of the proof
    """
    if subgroup_order == 1:
        return {"char0": Fraction(0), "charp": Fraction(0)}
    if subgroup_order == p * p:
        return {
            "char0": (m1 + 1 + Fraction(m2 + 1, p)) * (p * p - p),
            "charp": Fraction((m1 + 1) * (p * p - 1) + (m2 - m1) * (p - 1)),
        }
    value = Fraction((m2 + 1) * (p - 1) if contains_first_axis else (m1 + 1) * (p - 1))
    return {"char0": value, "charp": value}

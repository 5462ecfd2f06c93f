"""Finite groups P x| Z/m and ramification divisors of their covers.

Explicitly enumerated metacyclic and bicyclic groups, subgroup enumeration,
branch cycle descriptions, and the divisor degrees compared by the KGB
obstruction.
"""

from src.groups.base import ElementaryBicyclic, FiniteGroup, MetacyclicGroup, dihedral
from src.groups.branch_cycles import (
    BranchCycleDescription,
    bicyclic_closed_form,
    metacyclic_char0_closed_form,
    metacyclic_charp_closed_form,
    point_contribution,
    ram_divisor_char0,
    ram_divisor_charp,
    tame_hurwitz_count,
)
from src.groups.katz_gabber import elementary_bicyclic_filtration, metacyclic_filtration, minimal_upper_jumps
from src.groups.subgroups import is_normal, is_subgroup, subgroups

__all__ = [
    "FiniteGroup",
    "MetacyclicGroup",
    "ElementaryBicyclic",
    "dihedral",
    "subgroups",
    "is_subgroup",
    "is_normal",
    "BranchCycleDescription",
    "point_contribution",
    "ram_divisor_char0",
    "ram_divisor_charp",
    "tame_hurwitz_count",
    "metacyclic_char0_closed_form",
    "metacyclic_charp_closed_form",
    "bicyclic_closed_form",
    "elementary_bicyclic_filtration",
    "metacyclic_filtration",
    "minimal_upper_jumps",
]

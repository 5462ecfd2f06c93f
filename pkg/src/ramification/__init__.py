"""Higher ramification filtrations.

Lower and upper numbering, Herbrand's functions, differents of cyclic
extensions and composition with a tame part.
"""

from src.ramification.filtration import (
    Numbering,
    RamFiltration,
    compose_tame,
    cyclic_different,
    different_from_lower,
    different_from_upper,
    herbrand_lower_from_upper,
    herbrand_upper_from_lower,
    phi,
    psi,
)
from src.ramification.subgroups import SubgroupFiltration

__all__ = [
    "Numbering",
    "RamFiltration",
    "SubgroupFiltration",
    "phi",
    "psi",
    "herbrand_upper_from_lower",
    "herbrand_lower_from_upper",
    "different_from_lower",
    "different_from_upper",
    "cyclic_different",
    "compose_tame",
]

"""Artin-Schreier-Witt extensions of k((t)): reduction, normal forms and jumps."""

from src.asw.reduction import ArtinSchreierReduction, artin_schreier_jump, reduce_artin_schreier
from src.asw.witt import WittNormalForm, asw_upper_jumps, different_of, jump_constraints_hold

__all__ = [
    "ArtinSchreierReduction",
    "reduce_artin_schreier",
    "artin_schreier_jump",
    "WittNormalForm",
    "asw_upper_jumps",
    "jump_constraints_hold",
    "different_of",
]

"""Explicit cyclic lifts, the different criterion, the jump condition and depth."""

from src.lifting.criterion import (
    DifferentCertificate,
    LiftStatus,
    ZpReduction,
    dihedral_example_check,
    different_criterion,
    zp_reduction,
)
from src.lifting.depth import (
    DeformationDatum,
    DepthProfile,
    Reduction,
    branch_points_above,
    chain_depth,
    deformation_datum,
    depth_cap,
    depth_profile_check,
    reduction_type,
    zp_depth,
)
from src.lifting.kummer import (
    BranchRow,
    GenericDifferent,
    KummerChain,
    branch_table,
    build_zp2_lift,
    build_zp_lift,
    generic_different,
)
from src.lifting.oort import OortVerdict, minimal_jumps, obstruction_window, oort_condition, step_obstruction

__all__ = [
    "KummerChain",
    "BranchRow",
    "GenericDifferent",
    "build_zp_lift",
    "build_zp2_lift",
    "branch_table",
    "generic_different",
    "LiftStatus",
    "DifferentCertificate",
    "different_criterion",
    "ZpReduction",
    "zp_reduction",
    "dihedral_example_check",
    "OortVerdict",
    "oort_condition",
    "obstruction_window",
    "step_obstruction",
    "minimal_jumps",
    "Reduction",
    "DepthProfile",
    "DeformationDatum",
    "depth_cap",
    "zp_depth",
    "reduction_type",
    "branch_points_above",
    "depth_profile_check",
    "chain_depth",
    "deformation_datum",
]

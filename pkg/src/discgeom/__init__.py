"""Stable models of marked open unit discs: cluster trees and specialization."""

from src.discgeom.cluster_tree import (
    INFINITY_ID,
    ClusterTree,
    MarkedDisc,
    Specialization,
    SpecializationKind,
    cluster_tree,
    specialize,
    specialize_distances,
)

__all__ = [
    "INFINITY_ID",
    "MarkedDisc",
    "ClusterTree",
    "Specialization",
    "SpecializationKind",
    "cluster_tree",
    "specialize",
    "specialize_distances",
]

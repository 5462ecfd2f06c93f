"""Hurwitz trees of type (C, chi): data model, axiom validator and constructor."""

from src.hurwitz.construct import build_small_conductor, default_character, default_points
from src.hurwitz.tree import ROOT, Component, Edge, HurwitzTree, boundary_conductors, conductor
from src.hurwitz.validator import Axiom, Violation, validate

__all__ = [
    "ROOT",
    "Component",
    "Edge",
    "HurwitzTree",
    "conductor",
    "boundary_conductors",
    "Axiom",
    "Violation",
    "validate",
    "build_small_conductor",
    "default_character",
    "default_points",
]

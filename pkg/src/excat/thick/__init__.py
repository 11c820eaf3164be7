"""Thick-subcategory analysis: leg classes, resolving behaviour, lemmas."""

from .analysis import (
    LRClasses,
    MorphismClass,
    NotThickError,
    NoWitnessWithinCapError,
    ThickReport,
    classes_LR,
    is_thick,
)
from .lemmas import (
    BiresolvingReport,
    LemmaReport,
    PercolatingReport,
    check_percolating_conditions,
    is_biresolving,
    is_percolating,
    lift_triangle_morphism,
    verify_structure_lemmas,
)

__all__ = [
    "BiresolvingReport",
    "LRClasses",
    "LemmaReport",
    "MorphismClass",
    "NoWitnessWithinCapError",
    "NotThickError",
    "PercolatingReport",
    "ThickReport",
    "check_percolating_conditions",
    "classes_LR",
    "is_biresolving",
    "is_percolating",
    "is_thick",
    "lift_triangle_morphism",
    "verify_structure_lemmas",
]

"""Finitely presented additive categories and the searches they support."""

from .groups import (
    AffineSolutions,
    FinAb,
    QuotientMap,
    Subgroup,
    group_from_oracle,
    quotient_group,
    smith_normal_form,
    solve_affine,
    solve_mod,
    solve_system,
)
from .presentation import (
    ZERO_OBJ,
    CapError,
    CategoryPresentation,
    CompositionShapeError,
    HomShape,
    Mor,
    Obj,
    PresentationError,
    SequenceEndpointError,
    Subcat,
)
from .ops import (
    MorSolutions,
    compose,
    compose_many,
    direct_sum,
    enumerate_homs,
    enumerate_items,
    enumerate_objects,
    injection,
    invertible,
    is_epi,
    is_isomorphism,
    is_mono,
    mor_from_sum,
    mor_into_sum,
    projection,
    retraction_of,
    section_of,
    seq_equivalent,
    solve_mor,
    sum_objects,
)
from .quotient import (
    Factorization,
    QuotientPresentation,
    factors_through,
    ideal_quotient,
    ideal_subgroup,
)

__all__ = [
    "AffineSolutions",
    "FinAb",
    "QuotientMap",
    "Subgroup",
    "group_from_oracle",
    "quotient_group",
    "smith_normal_form",
    "solve_affine",
    "solve_mod",
    "solve_system",
    "ZERO_OBJ",
    "CapError",
    "CategoryPresentation",
    "CompositionShapeError",
    "HomShape",
    "Mor",
    "Obj",
    "PresentationError",
    "SequenceEndpointError",
    "Subcat",
    "MorSolutions",
    "compose",
    "compose_many",
    "direct_sum",
    "enumerate_homs",
    "enumerate_items",
    "enumerate_objects",
    "injection",
    "invertible",
    "is_epi",
    "is_isomorphism",
    "is_mono",
    "mor_from_sum",
    "mor_into_sum",
    "projection",
    "retraction_of",
    "section_of",
    "seq_equivalent",
    "solve_mor",
    "sum_objects",
    "Factorization",
    "QuotientPresentation",
    "factors_through",
    "ideal_quotient",
    "ideal_subgroup",
]

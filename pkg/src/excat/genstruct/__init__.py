"""Generators: turn primitive presentations into verified structures."""

from .abelian import (
    AbelianAxiomError,
    AbelianPresentation,
    from_abelian,
)
from .idquot import NotProjectiveInjectiveError, ideal_quotient_structure
from .presets import (
    PRESET_NAMES,
    build_preset,
    frobmod_presentation,
    moda2_presentation,
    preset_structure,
    stmod2_presentation,
    vec2_presentation,
)
from .split import split_structure
from .triangulated import (
    Triangle,
    TriangulatedPresentation,
    TriangulationAxiomError,
    from_triangulated,
)

__all__ = [
    "AbelianAxiomError",
    "AbelianPresentation",
    "NotProjectiveInjectiveError",
    "PRESET_NAMES",
    "Triangle",
    "TriangulatedPresentation",
    "TriangulationAxiomError",
    "build_preset",
    "frobmod_presentation",
    "from_abelian",
    "from_triangulated",
    "ideal_quotient_structure",
    "moda2_presentation",
    "preset_structure",
    "split_structure",
    "stmod2_presentation",
    "vec2_presentation",
]

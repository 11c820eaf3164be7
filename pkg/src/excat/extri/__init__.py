"""Extension-augmented category structures and their axiom checkers."""

from .structure import (
    Ext,
    ExtActionError,
    ExtShape,
    ExtTable,
    ExtTableError,
    ExtriStructure,
    Realization,
    RealizationError,
    ext_act,
    op_ext,
    op_mor,
    opposite_category,
    opposite_structure,
)
from .axioms import (
    AxiomReport,
    AxiomResult,
    CheckScope,
    MorphismClassification,
    NotDeflationError,
    NotInflationError,
    Verdict,
    check_axioms,
    classify_morphism,
    cocone,
    cone,
)
from .functors import (
    ExactFunctor,
    ExactNatTrans,
    FunctorReport,
    check_exact_functor,
    check_exact_nat_trans,
    compose_exact,
    identity_functor,
    is_exact_equivalence,
)

__all__ = [
    "Ext",
    "ExtActionError",
    "ExtShape",
    "ExtTable",
    "ExtTableError",
    "ExtriStructure",
    "Realization",
    "RealizationError",
    "ext_act",
    "op_ext",
    "op_mor",
    "opposite_category",
    "opposite_structure",
    "AxiomReport",
    "AxiomResult",
    "CheckScope",
    "MorphismClassification",
    "NotDeflationError",
    "NotInflationError",
    "Verdict",
    "check_axioms",
    "classify_morphism",
    "cocone",
    "cone",
    "ExactFunctor",
    "ExactNatTrans",
    "FunctorReport",
    "check_exact_functor",
    "check_exact_nat_trans",
    "compose_exact",
    "identity_functor",
    "is_exact_equivalence",
]

"""Built-in example instances, constructed programmatically.

Each preset is small enough to check by hand and is exercised heavily by
the test suite:

- ``vec2``: one basic object with End = Z/2; semisimple, so the only
  structure it carries is the split one.
- ``moda2``: three basics S1, S2, P with hom(S2, P) and hom(P, S1) each
  Z/2 and the composite S2 -> P -> S1 zero; the middle P glues S2 under
  S1, giving a one-dimensional extension group over (S1, S2).
- ``frobmod``: basics k and A, with End(A) = (Z/2)^2 spanned by the
  identity and a square-zero endomorphism theta = into∘onto; A is
  projective and injective for the induced extension groups, and the
  picture k -> A -> k gives |E(k, k)| = 2.
- ``stmod2``: the triangulated shadow of ``frobmod`` after killing A —
  one basic k, identity shift, and the distinguished triangle
  k -> 0 -> k -> k.
"""

from __future__ import annotations

from ..extri.structure import ExtriStructure
from ..fincat.groups import FinAb
from ..fincat.presentation import ZERO_OBJ, CategoryPresentation, Obj
from .abelian import from_abelian
from .split import split_structure
from .triangulated import Triangle, TriangulatedPresentation, from_triangulated

PRESET_NAMES = ("vec2", "stmod2", "moda2", "frobmod")

Z2 = FinAb((2,))


def vec2_presentation() -> CategoryPresentation:
    return CategoryPresentation(
        ("k",),
        {("k", "k"): Z2},
        {("k", "k"): ("id",)},
        {("k", "k", "k"): (((1,),),)},
        {"k": (1,)},
        name="vec2",
    )


def moda2_presentation() -> CategoryPresentation:
    one = (((1,),),)
    return CategoryPresentation(
        ("S1", "S2", "P"),
        {
            ("S1", "S1"): Z2,
            ("S2", "S2"): Z2,
            ("P", "P"): Z2,
            ("S2", "P"): Z2,
            ("P", "S1"): Z2,
        },
        {
            ("S1", "S1"): ("id",),
            ("S2", "S2"): ("id",),
            ("P", "P"): ("id",),
            ("S2", "P"): ("incl",),
            ("P", "S1"): ("quot",),
        },
        {
            ("S1", "S1", "S1"): one,
            ("S2", "S2", "S2"): one,
            ("P", "P", "P"): one,
            ("S2", "S2", "P"): one,
            ("S2", "P", "P"): one,
            ("P", "P", "S1"): one,
            ("P", "S1", "S1"): one,
            # quot∘incl = 0 lands in the zero group hom(S2, S1)
        },
        {"S1": (1,), "S2": (1,), "P": (1,)},
        name="moda2",
    )


def frobmod_presentation() -> CategoryPresentation:
    return CategoryPresentation(
        ("k", "A"),
        {
            ("k", "k"): Z2,
            ("k", "A"): Z2,
            ("A", "k"): Z2,
            ("A", "A"): FinAb((2, 2)),
        },
        {
            ("k", "k"): ("id",),
            ("k", "A"): ("into",),
            ("A", "k"): ("onto",),
            ("A", "A"): ("id", "theta"),
        },
        {
            ("k", "k", "k"): (((1,),),),
            ("k", "k", "A"): (((1,),),),  # into∘id
            ("k", "A", "k"): (((0,),),),  # onto∘into = 0
            ("k", "A", "A"): (((1,),), ((0,),)),  # id∘into; theta∘into = 0
            ("A", "k", "k"): (((1,),),),  # id∘onto
            ("A", "k", "A"): (((0, 1),),),  # into∘onto = theta
            ("A", "A", "k"): (((1,), (0,)),),  # onto∘id; onto∘theta = 0
            ("A", "A", "A"): (
                ((1, 0), (0, 1)),  # id∘id, id∘theta
                ((0, 1), (0, 0)),  # theta∘id, theta∘theta = 0
            ),
        },
        {"k": (1,), "A": (1, 0)},
        name="frobmod",
    )


def stmod2_presentation() -> TriangulatedPresentation:
    cat = CategoryPresentation(
        ("k",),
        {("k", "k"): Z2},
        {("k", "k"): ("id",)},
        {("k", "k", "k"): (((1,),),)},
        {"k": (1,)},
        name="stmod2",
    )
    k = Obj(("k",))
    seed = Triangle(
        cat.zero_mor(k, ZERO_OBJ),
        cat.zero_mor(ZERO_OBJ, k),
        cat.identity(k),
    )
    return TriangulatedPresentation(cat, {"k": "k"}, (seed,), name="stmod2")


def build_preset(name: str):
    """The presentation-level object for a named preset."""
    builders = {
        "vec2": vec2_presentation,
        "moda2": moda2_presentation,
        "frobmod": frobmod_presentation,
        "stmod2": stmod2_presentation,
    }
    try:
        return builders[name]()
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}"
        ) from None


def preset_structure(name: str) -> ExtriStructure:
    """The canonical generated structure for a named preset."""
    pres = build_preset(name)
    if name == "vec2":
        return split_structure(pres)
    if name == "stmod2":
        return from_triangulated(pres)
    return from_abelian(pres)

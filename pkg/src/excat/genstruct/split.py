"""The degenerate structure whose only conflations are the split ones."""

from __future__ import annotations

from ..extri.structure import ExtTable, ExtriStructure, Realization
from ..fincat.presentation import CategoryPresentation
from .abelian import _split_seq


def split_structure(cat: CategoryPresentation) -> ExtriStructure:
    """Equip a presentation with the zero extension bifunctor.

    Every extension group is trivial, so the lone class over each pair is
    realized by the direct-sum sequence.  This is the smallest structure a
    presentation carries and is handy as a baseline in comparisons.
    """
    table = ExtTable(cat, groups={}, push={}, pull={})
    reals = {}
    for by in cat.objects():
        for over in cat.objects():
            if by.rank + over.rank > cat.rank_cap:
                continue
            seq = _split_seq(cat, over, by)
            reals[(over, by)] = {table.zero(over, by).entries: seq}
    real = Realization(cat, table, reals)
    return ExtriStructure(
        cat, table, real, notes={"generator": "split"}
    )

"""Quotient a structure by a subcategory of projective-injective objects.

Killing objects on which every extension group vanishes (in both slots)
leaves the extension data untouched: the groups carry over verbatim, the
actions act through arbitrary lifts (well-defined, since the difference of
two lifts factors through a killed object and so acts as zero), and each
stored conflation descends by deleting the killed summands of its middle.

The quotient presentation drops the killed basics entirely instead of
keeping them around as objects isomorphic to zero; the full subcategory on
the survivors is equivalent, and a leaner object universe keeps every
downstream enumeration honest about its rank cap.  The projection functor
sends a killed basic to the zero object.
"""

from __future__ import annotations

import itertools

from ..extri.functors import ExactFunctor
from ..extri.structure import Ext, ExtTable, ExtriStructure, Realization
from ..fincat.presentation import (
    ZERO_OBJ,
    CategoryPresentation,
    Mor,
    Obj,
    Subcat,
    Vector,
)
from ..fincat.quotient import QuotientPresentation, ideal_quotient


class NotProjectiveInjectiveError(ValueError):
    """A killed object carries a nonzero extension group."""


def _unit(rank: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(rank))


def _pruned(qp: QuotientPresentation, survivors: tuple[str, ...]) -> CategoryPresentation:
    homs = {}
    gen_names = {}
    identities = {}
    compose = {}
    for a, b in itertools.product(survivors, repeat=2):
        grp = qp.hom_basic(a, b)
        if grp.rank:
            homs[(a, b)] = grp
            gen_names[(a, b)] = qp.gen_names[(a, b)]
    for a in survivors:
        if qp.hom_basic(a, a).rank:
            identities[a] = qp.identity_basic(a)
    for a, b, c in itertools.product(survivors, repeat=3):
        nab = qp.hom_basic(a, b).rank
        nbc = qp.hom_basic(b, c).rank
        if not (nab and nbc):
            continue
        compose[(a, b, c)] = tuple(
            tuple(
                qp.compose_basic(a, b, c, _unit(nbc, j), _unit(nab, i))
                for i in range(nab)
            )
            for j in range(nbc)
        )
    return CategoryPresentation(
        survivors,
        homs,
        gen_names,
        compose,
        identities,
        rank_cap=qp.rank_cap,
        name=qp.name,
    )


def _lift_vec(qp: QuotientPresentation, a: str, b: str, vec: Vector) -> Vector:
    wrapped = Mor(Obj((a,)), Obj((b,)), ((vec,),))
    return qp.lift_mor(wrapped).entries[0][0]


def _strip(
    cat: CategoryPresentation, qp: QuotientPresentation, f: Mor, killed
) -> Mor:
    src_idx = [j for j, p in enumerate(f.src.parts) if p not in killed]
    dst_idx = [i for i, p in enumerate(f.dst.parts) if p not in killed]
    return qp.proj_mor(cat.restrict(f, src_idx, dst_idx))


def ideal_quotient_structure(
    structure: ExtriStructure, killed: Subcat
) -> tuple[ExtriStructure, ExactFunctor]:
    """The structure on the quotient by projective-injectives, plus the
    projection functor (whose extension-group maps are identities).
    """
    cat = structure.cat
    unknown = killed.members - set(cat.basics)
    if unknown:
        raise ValueError(f"killed members {sorted(unknown)} are not basics")
    for i in sorted(killed.members):
        for b in cat.basics:
            if structure.ext.group(i, b).rank:
                raise NotProjectiveInjectiveError(
                    f"{i!r} is not projective here: the group over {i!r} "
                    f"by {b!r} is nonzero"
                )
            if structure.ext.group(b, i).rank:
                raise NotProjectiveInjectiveError(
                    f"{i!r} is not injective here: the group over {b!r} "
                    f"by {i!r} is nonzero"
                )
    qp = ideal_quotient(cat, killed)
    survivors = tuple(b for b in cat.basics if b not in killed.members)
    qcat = _pruned(qp, survivors)

    groups = {}
    push = {}
    pull = {}
    for c, a in itertools.product(survivors, repeat=2):
        grp = structure.ext.group(c, a)
        if grp.rank:
            groups[(c, a)] = grp
    for c, a, a2 in itertools.product(survivors, repeat=3):
        src, dst = groups.get((c, a)), groups.get((c, a2))
        hom = qcat.hom_basic(a, a2)
        if not (src and dst and hom.rank):
            continue
        push[(c, a, a2)] = tuple(
            tuple(
                structure.ext.push_basic(
                    c, a, a2, _lift_vec(qp, a, a2, _unit(hom.rank, g)), _unit(src.rank, i)
                )
                for i in range(src.rank)
            )
            for g in range(hom.rank)
        )
    for c, c2, a in itertools.product(survivors, repeat=3):
        src, dst = groups.get((c, a)), groups.get((c2, a))
        hom = qcat.hom_basic(c2, c)
        if not (src and dst and hom.rank):
            continue
        pull[(c, c2, a)] = tuple(
            tuple(
                structure.ext.pull_basic(
                    c, c2, a, _lift_vec(qp, c2, c, _unit(hom.rank, g)), _unit(src.rank, i)
                )
                for i in range(src.rank)
            )
            for g in range(hom.rank)
        )
    table = ExtTable(qcat, groups, push, pull)

    reals = {}
    dropped = []
    for pair, rows in structure.real.table.items():
        over, by = pair
        if any(p in killed.members for p in over.parts + by.parts):
            continue
        reals[pair] = {
            key: (_strip(cat, qp, x, killed.members), _strip(cat, qp, y, killed.members))
            for key, (x, y) in rows.items()
        }
    for by in qcat.objects():
        for over in qcat.objects():
            if by.rank + over.rank > qcat.rank_cap:
                continue
            if (over, by) not in reals:
                dropped.append((over, by))
    real = Realization(qcat, table, reals)
    out = ExtriStructure(
        qcat,
        table,
        real,
        notes={
            "generator": "ideal-quotient",
            "killed": tuple(sorted(killed.members)),
            "source": structure.name,
            "dropped_pairs": tuple(dropped),
        },
    )

    obj_map = {
        b: (Obj((b,)) if b in survivors else ZERO_OBJ) for b in cat.basics
    }
    gen_map = {}
    for a, b in itertools.product(cat.basics, repeat=2):
        n = cat.hom_basic(a, b).rank
        if not n:
            continue
        if a in survivors and b in survivors:
            gen_map[(a, b)] = tuple(
                qp.proj_mor(Mor(Obj((a,)), Obj((b,)), ((_unit(n, i),),)))
                for i in range(n)
            )
        else:
            zero = qcat.zero_mor(obj_map[a], obj_map[b])
            gen_map[(a, b)] = tuple(zero for _ in range(n))
    phi = {}
    for c, a in itertools.product(cat.basics, repeat=2):
        n = structure.ext.group(c, a).rank
        if not n:
            continue
        # killed basics never reach here: their groups were checked zero
        phi[(c, a)] = tuple(
            Ext(Obj((c,)), Obj((a,)), ((_unit(n, i),),)) for i in range(n)
        )
    functor = ExactFunctor(
        structure, out, obj_map, gen_map, phi, name="quotient-projection"
    )
    return out, functor

"""Build a structure whose extensions are shifted hom groups.

A presentation equipped with a degree-one self-equivalence and a table of
distinguished triangles determines extension data directly: the group over
``(c, a)`` is hom(c, a[1]), the covariant action composes with the shifted
morphism and the contravariant one precomposes, and a class is realized by
any distinguished triangle having it as third map.

Realizations are produced by a closure procedure rather than demanded as
input.  The component pool is the given triangle table, closed under
rotation, together with the contractible triangles ``a = a -> 0`` and
``0 -> c = c`` for each basic.  For a pair of endpoint objects, candidate
triangles are direct sums of components matching the endpoint multisets,
twisted by automorphisms of both endpoints; the zero class is always seeded
with the direct-sum sequence first, so ``realize(0)`` is split on the nose.
A pair whose classes cannot all be covered this way is left out of the
realization table (and listed in the structure notes) instead of being
half-filled.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from ..extri.structure import Ext, ExtTable, ExtriStructure, Realization
from ..fincat.ops import (
    injection,
    is_isomorphism,
    projection,
    solve_mor,
    sum_objects,
)
from ..fincat.presentation import (
    ZERO_OBJ,
    CategoryPresentation,
    Mor,
    Obj,
    Vector,
)

AUT_ENUM_LIMIT = 1 << 14


class TriangulationAxiomError(ValueError):
    """The triangle data failed a consistency or axiom check."""


@dataclass(frozen=True)
class Triangle:
    """x: a -> b, y: b -> c, z: c -> a[1]."""

    x: Mor
    y: Mor
    z: Mor


def _unit(rank: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(rank))


def _shift_obj(shift: Mapping[str, str], x: Obj) -> tuple[Obj, tuple[int, ...]]:
    """The shifted object plus the slot each original part lands in.

    Shifting can scramble the sorted part order, so the i-th part of ``x``
    ends up at slot ``perm[i]`` of the (re-sorted) image.
    """
    tagged = sorted((shift[p], i) for i, p in enumerate(x.parts))
    perm = [0] * x.rank
    for slot, (_, i) in enumerate(tagged):
        perm[i] = slot
    return Obj(tuple(t[0] for t in tagged)), tuple(perm)


def _shift_mor(cat: CategoryPresentation, shift: Mapping[str, str], f: Mor) -> Mor:
    src, sperm = _shift_obj(shift, f.src)
    dst, dperm = _shift_obj(shift, f.dst)
    rows: list[list[Vector]] = [
        [cat.hom_basic(src.parts[j], dst.parts[i]).zero() for j in range(src.rank)]
        for i in range(dst.rank)
    ]
    for i in range(f.dst.rank):
        for j in range(f.src.rank):
            rows[dperm[i]][sperm[j]] = f.entries[i][j]
    return Mor(src, dst, tuple(tuple(r) for r in rows))


@dataclass
class TriangulatedPresentation:
    """A presentation, a shift automorphism on basics, and seed triangles.

    The shift transports the i-th hom generator of a pair to the i-th
    generator of the shifted pair, so the shifted hom groups must match
    order-for-order and composition tables must carry over verbatim; this
    is checked on construction, as are the endpoint and zero-composite
    conditions on each seed triangle.
    """

    cat: CategoryPresentation
    shift: Mapping[str, str]
    triangles: tuple[Triangle, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        cat = self.cat
        sh = dict(self.shift)
        self.shift = sh
        if set(sh) != set(cat.basics) or set(sh.values()) != set(cat.basics):
            raise TriangulationAxiomError(
                "shift must be a bijection on the basic objects"
            )
        for a, b in itertools.product(cat.basics, repeat=2):
            if cat.hom_basic(sh[a], sh[b]).orders != cat.hom_basic(a, b).orders:
                raise TriangulationAxiomError(
                    f"shift does not preserve hom({a},{b})"
                )
        for a in cat.basics:
            if cat.hom_basic(a, a).rank and cat.identity_basic(
                sh[a]
            ) != cat.identity_basic(a):
                raise TriangulationAxiomError(
                    f"shift moves the identity of {a}"
                )
        for a, b, c in itertools.product(cat.basics, repeat=3):
            nf = cat.hom_basic(a, b).rank
            ng = cat.hom_basic(b, c).rank
            if not (nf and ng):
                continue
            for i in range(nf):
                for j in range(ng):
                    got = cat.compose_basic(
                        sh[a], sh[b], sh[c], _unit(ng, j), _unit(nf, i)
                    )
                    want = cat.compose_basic(a, b, c, _unit(ng, j), _unit(nf, i))
                    if got != want:
                        raise TriangulationAxiomError(
                            f"shift breaks composition on ({a},{b},{c})"
                        )
        for t in self.triangles:
            self._check_triangle(t)

    def _check_triangle(self, t: Triangle) -> None:
        cat = self.cat
        if t.y.src != t.x.dst or t.z.src != t.y.dst:
            raise TriangulationAxiomError(f"triangle maps do not chain: {t!r}")
        if t.z.dst != _shift_obj(self.shift, t.x.src)[0]:
            raise TriangulationAxiomError(
                f"third map must land in the shifted source: {t!r}"
            )
        if max(t.x.src.rank, t.x.dst.rank, t.y.dst.rank) > cat.rank_cap:
            raise TriangulationAxiomError(f"triangle exceeds the rank cap: {t!r}")
        for g, f in ((t.y, t.x), (t.z, t.y), (_shift_mor(cat, self.shift, t.x), t.z)):
            if not cat.is_zero_mor(cat.compose(g, f)):
                raise TriangulationAxiomError(
                    f"consecutive triangle maps do not vanish: {t!r}"
                )

    def rotate(self, t: Triangle) -> Triangle:
        return Triangle(
            t.y, t.z, self.cat.neg_mor(_shift_mor(self.cat, self.shift, t.x))
        )


def _class_of(shift: Mapping[str, str], w: Mor, over: Obj, by: Obj) -> Ext:
    """Read a morphism over -> by[1] as an extension-class grid."""
    _, perm = _shift_obj(shift, by)
    rows = tuple(
        tuple(w.entries[perm[i]][j] for j in range(over.rank))
        for i in range(by.rank)
    )
    return Ext(over, by, rows)


def _autos(cat: CategoryPresentation, x: Obj) -> list[tuple[Mor, Mor]]:
    """All (automorphism, inverse) pairs, or just the identity when huge."""
    shape = cat.hom_shape(x, x)
    ident = cat.identity(x)
    if shape.size > AUT_ENUM_LIMIT:
        return [(ident, ident)]
    out = []
    for f in shape.elements():
        inv = is_isomorphism(cat, f)
        if inv is not None:
            out.append((f, inv))
    return out


def _assemble(
    cat: CategoryPresentation,
    src: Obj,
    dst: Obj,
    placements: list[tuple[Mor, tuple[int, ...], tuple[int, ...]]],
) -> Mor:
    """Block sum: each (block, src slots, dst slots) dropped into a zero grid."""
    rows: list[list[Vector]] = [
        [cat.hom_basic(src.parts[j], dst.parts[i]).zero() for j in range(src.rank)]
        for i in range(dst.rank)
    ]
    for block, spos, dpos in placements:
        for i, gi in enumerate(dpos):
            for j, gj in enumerate(spos):
                rows[gi][gj] = block.entries[i][j]
    return Mor(src, dst, tuple(tuple(r) for r in rows))


class _RealizationBuilder:
    def __init__(self, pres: TriangulatedPresentation, table: ExtTable):
        self.pres = pres
        self.cat = pres.cat
        self.table = table
        self.pool = self._component_pool()
        self._aut_cache: dict[Obj, list[tuple[Mor, Mor]]] = {}

    def _component_pool(self) -> list[Triangle]:
        cat, pres = self.cat, self.pres
        seen: dict[tuple[Mor, Mor, Mor], Triangle] = {}
        frontier = list(pres.triangles)
        for b in cat.basics:
            bo = Obj((b,))
            sb = _shift_obj(pres.shift, bo)[0]
            frontier.append(
                Triangle(
                    cat.identity(bo),
                    cat.zero_mor(bo, ZERO_OBJ),
                    cat.zero_mor(ZERO_OBJ, sb),
                )
            )
            frontier.append(
                Triangle(
                    cat.zero_mor(ZERO_OBJ, bo),
                    cat.identity(bo),
                    cat.zero_mor(bo, ZERO_OBJ),
                )
            )
        while frontier:
            t = frontier.pop()
            key = (t.x, t.y, t.z)
            if key in seen:
                continue
            seen[key] = t
            frontier.append(self.pres.rotate(t))
        pool = [
            t
            for t in seen.values()
            if t.x.src.rank + t.y.dst.rank > 0
        ]
        pool.sort(key=lambda t: (t.x.src, t.y.dst, t.x, t.y, t.z))
        return pool

    def _autos(self, x: Obj) -> list[tuple[Mor, Mor]]:
        got = self._aut_cache.get(x)
        if got is None:
            got = _autos(self.cat, x)
            self._aut_cache[x] = got
        return got

    def _templates(self, by: Obj, over: Obj):
        """Multisets of pool components whose endpoints sum to (by, over)."""
        pool = self.pool
        out: list[tuple[Triangle, ...]] = []

        def rec(i: int, need_by: Counter, need_over: Counter, acc: list[Triangle]) -> None:
            if not need_by and not need_over:
                out.append(tuple(acc))
                return
            if i == len(pool):
                return
            rec(i + 1, need_by, need_over, acc)
            t = pool[i]
            a, c = Counter(t.x.src.parts), Counter(t.y.dst.parts)
            nb, no = need_by, need_over
            uses = 0
            while _fits(a, nb) and _fits(c, no):
                nb, no = nb - a, no - c
                acc.append(t)
                uses += 1
                rec(i + 1, nb, no, acc)
            for _ in range(uses):
                acc.pop()

        rec(0, Counter(by.parts), Counter(over.parts), [])
        return out

    def _sum_triangle(self, parts: tuple[Triangle, ...]) -> Triangle:
        """Direct sum of component triangles, with slot bookkeeping."""
        cat, shift = self.cat, self.pres.shift
        tot_a = tot_b = tot_c = ZERO_OBJ
        pos_a: list[tuple[int, ...]] = []
        pos_b: list[tuple[int, ...]] = []
        pos_c: list[tuple[int, ...]] = []
        for t in parts:
            tot_a, pos_a = _grow(tot_a, pos_a, t.x.src)
            tot_b, pos_b = _grow(tot_b, pos_b, t.x.dst)
            tot_c, pos_c = _grow(tot_c, pos_c, t.y.dst)
        sa, aperm = _shift_obj(shift, tot_a)
        x = _assemble(
            cat, tot_a, tot_b,
            [(t.x, pos_a[k], pos_b[k]) for k, t in enumerate(parts)],
        )
        y = _assemble(
            cat, tot_b, tot_c,
            [(t.y, pos_b[k], pos_c[k]) for k, t in enumerate(parts)],
        )
        z_placements = []
        for k, t in enumerate(parts):
            _, local = _shift_obj(shift, t.x.src)
            dpos = [0] * t.x.src.rank
            for j in range(t.x.src.rank):
                dpos[local[j]] = aperm[pos_a[k][j]]
            z_placements.append((t.z, pos_c[k], tuple(dpos)))
        z = _assemble(cat, tot_c, sa, z_placements)
        return Triangle(x, y, z)

    def realize_pair(
        self, over: Obj, by: Obj
    ) -> dict[tuple, tuple[Mor, Mor]] | None:
        cat, shift, table = self.cat, self.pres.shift, self.table
        shape = table.shape(over, by)
        rows: dict[tuple, tuple[Mor, Mor]] = {}
        mid, pos_by, pos_over = sum_objects(by, over)
        rows[table.zero(over, by).entries] = (
            injection(cat, by, mid, pos_by),
            projection(cat, mid, over, pos_over),
        )
        if len(rows) == shape.size:
            return rows
        for tpl in self._templates(by, over):
            tri = self._sum_triangle(tpl)
            for u, u_inv in self._autos(by):
                xu = cat.compose(tri.x, u)
                su_inv = _shift_mor(cat, shift, u_inv)
                for v, v_inv in self._autos(over):
                    w = cat.compose(su_inv, cat.compose(tri.z, v_inv))
                    key = _class_of(shift, w, over, by).entries
                    if key in rows:
                        continue
                    rows[key] = (xu, cat.compose(v, tri.y))
                    if len(rows) == shape.size:
                        return rows
        return rows if len(rows) == shape.size else None


def _fits(need: Counter, have: Counter) -> bool:
    return all(have[k] >= v for k, v in need.items())


def _grow(
    total: Obj, positions: list[tuple[int, ...]], nxt: Obj
) -> tuple[Obj, list[tuple[int, ...]]]:
    total2, pos_old, pos_new = sum_objects(total, nxt)
    out = [tuple(pos_old[i] for i in slots) for slots in positions]
    out.append(tuple(pos_new))
    return total2, out


def from_triangulated(
    source: TriangulatedPresentation, tr_scope: int = 2
) -> ExtriStructure:
    """Extension data from a shift and a distinguished-triangle table.

    ``tr_scope`` bounds the endpoint rank sum of the conflation pairs fed
    to the morphism-extension audit; the rotation audit runs on every
    stored conflation.  Both audits raise :class:`TriangulationAxiomError`
    on a conclusive failure.
    """
    cat, sh = source.cat, source.shift
    groups = {}
    push = {}
    pull = {}
    for c, a in itertools.product(cat.basics, repeat=2):
        grp = cat.hom_basic(c, sh[a])
        if grp.rank:
            groups[(c, a)] = grp
    for c, a, a2 in itertools.product(cat.basics, repeat=3):
        src, dst = groups.get((c, a)), groups.get((c, a2))
        hom = cat.hom_basic(a, a2)
        if not (src and dst and hom.rank):
            continue
        push[(c, a, a2)] = tuple(
            tuple(
                cat.compose_basic(c, sh[a], sh[a2], _unit(hom.rank, g), _unit(src.rank, i))
                for i in range(src.rank)
            )
            for g in range(hom.rank)
        )
    for c, c2, a in itertools.product(cat.basics, repeat=3):
        src, dst = groups.get((c, a)), groups.get((c2, a))
        hom = cat.hom_basic(c2, c)
        if not (src and dst and hom.rank):
            continue
        pull[(c, c2, a)] = tuple(
            tuple(
                cat.compose_basic(c2, c, sh[a], _unit(src.rank, i), _unit(hom.rank, g))
                for i in range(src.rank)
            )
            for g in range(hom.rank)
        )
    table = ExtTable(cat, groups, push, pull)
    builder = _RealizationBuilder(source, table)
    reals = {}
    dropped = []
    for by in cat.objects():
        for over in cat.objects():
            if by.rank + over.rank > cat.rank_cap:
                continue
            rows = builder.realize_pair(over, by)
            if rows is None:
                dropped.append((over, by))
            else:
                reals[(over, by)] = rows
    real = Realization(cat, table, reals)
    structure = ExtriStructure(
        cat,
        table,
        real,
        notes={
            "generator": "triangulated",
            "dropped_pairs": tuple(dropped),
            "shift": dict(sh),
        },
    )
    _audit_rotation(source, structure)
    _audit_extension(source, structure, tr_scope)
    return structure


def _ext_mor(
    cat: CategoryPresentation, shift: Mapping[str, str], d: Ext
) -> Mor:
    """The morphism over -> by[1] carrying the class grid."""
    sby, perm = _shift_obj(shift, d.by)
    rows: list[list[Vector]] = [
        [cat.hom_basic(d.over.parts[j], sby.parts[i]).zero() for j in range(d.over.rank)]
        for i in range(sby.rank)
    ]
    for i in range(d.by.rank):
        for j in range(d.over.rank):
            rows[perm[i]][j] = d.entries[i][j]
    return Mor(d.over, sby, tuple(tuple(r) for r in rows))


def _audit_rotation(
    source: TriangulatedPresentation, structure: ExtriStructure
) -> None:
    """Each stored conflation, rotated once, must realize minus the shifted
    first map — checked whenever the rotated pair is itself stored."""
    cat, sh = source.cat, source.shift
    for d, x, y in structure.real.conflations():
        z = _ext_mor(cat, sh, d)
        sa = z.dst
        mid = x.dst
        if not structure.real.has_pair(sa, mid):
            continue
        rot_class = _class_of(
            sh, cat.neg_mor(_shift_mor(cat, sh, x)), sa, mid
        )
        if not structure.real.matches(rot_class, y, z):
            raise TriangulationAxiomError(
                f"rotation of the triangle for {d!r} is not distinguished"
            )


def _audit_extension(
    source: TriangulatedPresentation, structure: ExtriStructure, scope: int
) -> None:
    """Commuting squares on the first maps extend to the third objects."""
    cat, sh = source.cat, source.shift
    small = [
        (d, x, y)
        for d, x, y in structure.real.conflations()
        if d.over.rank + d.by.rank <= scope
    ]
    for (d1, x1, y1), (d2, x2, y2) in itertools.product(small, repeat=2):
        z1 = _ext_mor(cat, sh, d1)
        z2 = _ext_mor(cat, sh, d2)
        for u in cat.hom_shape(d1.by, d2.by).elements():
            vs = solve_mor(
                cat,
                [(x1.dst, x2.dst)],
                lambda ms: [cat.sub_mor(cat.compose(ms[0], x1), cat.compose(x2, u))],
            )
            if vs is None:
                continue
            su = _shift_mor(cat, sh, u)
            for (v,) in vs.iter_witnesses():
                ws = solve_mor(
                    cat,
                    [(d1.over, d2.over)],
                    lambda ms: [
                        cat.sub_mor(cat.compose(ms[0], y1), cat.compose(y2, v)),
                        cat.sub_mor(cat.compose(z2, ms[0]), cat.compose(su, z1)),
                    ],
                )
                if ws is None:
                    raise TriangulationAxiomError(
                        "a commuting square does not extend to the third "
                        f"objects at {(d1, d2)!r}"
                    )

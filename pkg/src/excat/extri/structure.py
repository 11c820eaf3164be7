"""Extension groups with actions, realizations, and the bundled structure.

An extension table assigns a finite abelian group E(c, a) to each ordered
pair of basic objects together with the action of hom generators on both
sides. Everything extends biadditively: an extension over C = c_1 ⊕ ... with
coefficients in A = a_1 ⊕ ... is a matrix of basic classes, morphisms act
blockwise, and the group laws are entrywise. This mirrors how morphisms
themselves are block matrices over the basic hom groups.

The realization table is extensional: for every pair of rank-capped objects
it stores one representative sequence per extension class. Membership of any
other candidate sequence in a class is decided by ``seq_equivalent``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from ..fincat.groups import FinAb, Vector
from ..fincat.presentation import CapError, CategoryPresentation, Mor, Obj
from ..fincat.ops import seq_equivalent


class ExtTableError(ValueError):
    """The extension table data is inconsistent."""


class ExtActionError(ValueError):
    """A morphism was applied to an extension with mismatched endpoints."""


class RealizationError(ValueError):
    """A realization entry is malformed (wrong endpoints, missing class)."""


@dataclass(frozen=True, order=True)
class Ext:
    """An element of E(over, by); ``entries[i][j]`` lies in E(over[j], by[i])."""

    over: Obj
    by: Obj
    entries: tuple[tuple[Vector, ...], ...]

    def __repr__(self) -> str:
        return f"Ext({self.over!r} by {self.by!r}, {self.entries})"

    @property
    def is_zero(self) -> bool:
        return not any(any(e) for row in self.entries for e in row)


class ExtShape:
    """Coordinate bookkeeping for E(over, by) as one flat product group."""

    def __init__(self, table: "ExtTable", over: Obj, by: Obj):
        self.table = table
        self.over = over
        self.by = by
        self.groups = tuple(
            tuple(table.group(c, a) for c in over.parts) for a in by.parts
        )
        orders: list[int] = []
        for row in self.groups:
            for g in row:
                orders.extend(g.orders)
        self.group = FinAb(tuple(orders))

    @property
    def size(self) -> int:
        return self.group.size

    def pack(self, e: Ext) -> Vector:
        flat: list[int] = []
        for row in e.entries:
            for entry in row:
                flat.extend(entry)
        return tuple(flat)

    def unpack(self, flat: Sequence[int]) -> Ext:
        pos = 0
        rows = []
        for row in self.groups:
            out = []
            for g in row:
                n = g.rank
                out.append(g.reduce(flat[pos : pos + n]))
                pos += n
            rows.append(tuple(out))
        return Ext(self.over, self.by, tuple(rows))

    def elements(self) -> Iterator[Ext]:
        for flat in self.group.elements():
            yield self.unpack(flat)

    def zero(self) -> Ext:
        return self.unpack(self.group.zero())


class ExtTable:
    """Extension groups on basic pairs plus generator-level actions.

    Parameters
    ----------
    cat:
        The underlying category presentation.
    groups:
        ``(c, a) -> FinAb`` for basic pairs; omitted pairs are zero.
    push:
        ``(c, a, a2) -> table`` where ``table[g][e]`` is the image in
        E(c, a2) of the e-th generator of E(c, a) under the g-th generator
        of hom(a, a2) acting covariantly.
    pull:
        ``(c, c2, a) -> table`` where ``table[g][e]`` is the image in
        E(c2, a) of the e-th generator of E(c, a) under the g-th generator
        of hom(c2, c) acting contravariantly.
    """

    def __init__(
        self,
        cat: CategoryPresentation,
        groups: Mapping[tuple[str, str], FinAb],
        push: Mapping[tuple[str, str, str], tuple[tuple[Vector, ...], ...]],
        pull: Mapping[tuple[str, str, str], tuple[tuple[Vector, ...], ...]],
    ):
        self.cat = cat
        self._groups = {
            pair: grp for pair, grp in groups.items() if grp.rank
        }
        self._push = dict(push)
        self._pull = dict(pull)
        self._shape_cache: dict[tuple[Obj, Obj], ExtShape] = {}
        self._validate()

    def group(self, c: str, a: str) -> FinAb:
        return self._groups.get((c, a), FinAb(()))

    def shape(self, over: Obj, by: Obj) -> ExtShape:
        key = (over, by)
        shape = self._shape_cache.get(key)
        if shape is None:
            shape = ExtShape(self, over, by)
            self._shape_cache[key] = shape
        return shape

    def zero(self, over: Obj, by: Obj) -> Ext:
        return self.shape(over, by).zero()

    def elements(self, over: Obj, by: Obj) -> Iterator[Ext]:
        return self.shape(over, by).elements()

    def add(self, d1: Ext, d2: Ext) -> Ext:
        assert d1.over == d2.over and d1.by == d2.by
        rows = []
        for i, a in enumerate(d1.by.parts):
            row = []
            for j, c in enumerate(d1.over.parts):
                row.append(self.group(c, a).add(d1.entries[i][j], d2.entries[i][j]))
            rows.append(tuple(row))
        return Ext(d1.over, d1.by, tuple(rows))

    def neg(self, d: Ext) -> Ext:
        rows = []
        for i, a in enumerate(d.by.parts):
            row = []
            for j, c in enumerate(d.over.parts):
                row.append(self.group(c, a).neg(d.entries[i][j]))
            rows.append(tuple(row))
        return Ext(d.over, d.by, tuple(rows))

    def sub(self, d1: Ext, d2: Ext) -> Ext:
        return self.add(d1, self.neg(d2))

    # -- basic-level actions ----------------------------------------------------

    def push_basic(self, c: str, a: str, a2: str, h: Vector, e: Vector) -> Vector:
        """(h: a -> a2) acting on e ∈ E(c, a), bilinearly from the table."""
        target = self.group(c, a2)
        out = target.zero()
        src = self.group(c, a)
        if not (src.rank and target.rank and self.cat.hom_basic(a, a2).rank):
            return out
        table = self._push.get((c, a, a2))
        if table is None:
            raise ExtTableError(f"missing push table for {(c, a, a2)}")
        for g, hg in enumerate(h):
            if hg == 0:
                continue
            for i, ei in enumerate(e):
                if ei == 0:
                    continue
                out = target.add(out, target.smul(hg * ei, table[g][i]))
        return out

    def pull_basic(self, c: str, c2: str, a: str, h: Vector, e: Vector) -> Vector:
        """(h: c2 -> c) acting on e ∈ E(c, a), bilinearly from the table."""
        target = self.group(c2, a)
        out = target.zero()
        src = self.group(c, a)
        if not (src.rank and target.rank and self.cat.hom_basic(c2, c).rank):
            return out
        table = self._pull.get((c, c2, a))
        if table is None:
            raise ExtTableError(f"missing pull table for {(c, c2, a)}")
        for g, hg in enumerate(h):
            if hg == 0:
                continue
            for i, ei in enumerate(e):
                if ei == 0:
                    continue
                out = target.add(out, target.smul(hg * ei, table[g][i]))
        return out

    # -- compound actions ---------------------------------------------------------

    def act_left(self, m: Mor, d: Ext) -> Ext:
        """The covariant action; ``m`` must start at the coefficient object."""
        if m.src != d.by:
            raise ExtActionError(
                f"left action needs m: {d.by!r} -> ..., got {m.src!r}"
            )
        rows = []
        for i2, a2 in enumerate(m.dst.parts):
            row = []
            for j, c in enumerate(d.over.parts):
                acc = self.group(c, a2).zero()
                for i, a in enumerate(d.by.parts):
                    acc = self.group(c, a2).add(
                        acc, self.push_basic(c, a, a2, m.entries[i2][i], d.entries[i][j])
                    )
                row.append(acc)
            rows.append(tuple(row))
        return Ext(d.over, m.dst, tuple(rows))

    def act_right(self, m: Mor, d: Ext) -> Ext:
        """The contravariant action; ``m`` must end at the base object."""
        if m.dst != d.over:
            raise ExtActionError(
                f"right action needs m: ... -> {d.over!r}, got {m.dst!r}"
            )
        rows = []
        for i, a in enumerate(d.by.parts):
            row = []
            for j2, c2 in enumerate(m.src.parts):
                acc = self.group(c2, a).zero()
                for j, c in enumerate(d.over.parts):
                    acc = self.group(c2, a).add(
                        acc, self.pull_basic(c, c2, a, m.entries[j][j2], d.entries[i][j])
                    )
                row.append(acc)
            rows.append(tuple(row))
        return Ext(m.src, d.by, tuple(rows))

    # -- validation -----------------------------------------------------------------

    def _gen(self, group: FinAb, i: int) -> Vector:
        return tuple(1 if k == i else 0 for k in range(group.rank))

    def _validate(self) -> None:
        cat = self.cat
        for (c, a), grp in self._groups.items():
            if c not in cat.basics or a not in cat.basics:
                raise ExtTableError(f"extension group on unknown basics {(c, a)}")
        basics = cat.basics
        # shapes, order-compatibility, identity action
        for c, a, a2 in itertools.product(basics, repeat=3):
            src, dst = self.group(c, a), self.group(c, a2)
            hom = cat.hom_basic(a, a2)
            if not (src.rank and hom.rank):
                continue
            table = self._push.get((c, a, a2))
            if dst.rank and table is None:
                raise ExtTableError(f"missing push table for {(c, a, a2)}")
            if table is None:
                continue
            if len(table) != hom.rank or any(len(row) != src.rank for row in table):
                raise ExtTableError(f"push table shape for {(c, a, a2)}")
            for g in range(hom.rank):
                for i in range(src.rank):
                    val = dst.reduce(table[g][i])
                    if any(dst.smul(hom.orders[g], val)) or any(
                        dst.smul(src.orders[i], val)
                    ):
                        raise ExtTableError(
                            f"push {(c, a, a2)}[{g}][{i}] breaks bilinearity"
                        )
        for c, c2, a in itertools.product(basics, repeat=3):
            src, dst = self.group(c, a), self.group(c2, a)
            hom = cat.hom_basic(c2, c)
            if not (src.rank and hom.rank):
                continue
            table = self._pull.get((c, c2, a))
            if dst.rank and table is None:
                raise ExtTableError(f"missing pull table for {(c, c2, a)}")
            if table is None:
                continue
            if len(table) != hom.rank or any(len(row) != src.rank for row in table):
                raise ExtTableError(f"pull table shape for {(c, c2, a)}")
            for g in range(hom.rank):
                for i in range(src.rank):
                    val = dst.reduce(table[g][i])
                    if any(dst.smul(hom.orders[g], val)) or any(
                        dst.smul(src.orders[i], val)
                    ):
                        raise ExtTableError(
                            f"pull {(c, c2, a)}[{g}][{i}] breaks bilinearity"
                        )
        # identities act as identities
        for (c, a), grp in self._groups.items():
            ida = cat.identity_basic(a)
            idc = cat.identity_basic(c)
            for i in range(grp.rank):
                e = self._gen(grp, i)
                if self.push_basic(c, a, a, ida, e) != e:
                    raise ExtTableError(f"id_{a} does not act trivially on E({c},{a})")
                if self.pull_basic(c, c, a, idc, e) != e:
                    raise ExtTableError(f"id_{c} does not act trivially on E({c},{a})")
        # functoriality on generators
        for c, a, a2, a3 in itertools.product(basics, repeat=4):
            grp = self.group(c, a)
            h1s, h2s = cat.hom_basic(a, a2), cat.hom_basic(a2, a3)
            if not (grp.rank and h1s.rank and h2s.rank):
                continue
            for g1 in range(h1s.rank):
                v1 = self._gen(h1s, g1)
                for g2 in range(h2s.rank):
                    v2 = self._gen(h2s, g2)
                    comp = cat.compose_basic(a, a2, a3, v2, v1)
                    for i in range(grp.rank):
                        e = self._gen(grp, i)
                        direct = self.push_basic(c, a, a3, comp, e)
                        staged = self.push_basic(
                            c, a2, a3, v2, self.push_basic(c, a, a2, v1, e)
                        )
                        if direct != staged:
                            raise ExtTableError(
                                f"push functoriality fails at {(c, a, a2, a3)}"
                            )
        for c, c2, c3, a in itertools.product(basics, repeat=4):
            grp = self.group(c, a)
            h1s, h2s = cat.hom_basic(c2, c), cat.hom_basic(c3, c2)
            if not (grp.rank and h1s.rank and h2s.rank):
                continue
            for g1 in range(h1s.rank):
                v1 = self._gen(h1s, g1)
                for g2 in range(h2s.rank):
                    v2 = self._gen(h2s, g2)
                    comp = cat.compose_basic(c3, c2, c, v1, v2)
                    for i in range(grp.rank):
                        e = self._gen(grp, i)
                        direct = self.pull_basic(c, c3, a, comp, e)
                        staged = self.pull_basic(
                            c2, c3, a, v2, self.pull_basic(c, c2, a, v1, e)
                        )
                        if direct != staged:
                            raise ExtTableError(
                                f"pull functoriality fails at {(c, c2, c3, a)}"
                            )
        # the two actions commute
        for c, c2, a, a2 in itertools.product(basics, repeat=4):
            grp = self.group(c, a)
            hs, cs = cat.hom_basic(a, a2), cat.hom_basic(c2, c)
            if not (grp.rank and hs.rank and cs.rank):
                continue
            for g in range(hs.rank):
                hv = self._gen(hs, g)
                for g2 in range(cs.rank):
                    cv = self._gen(cs, g2)
                    for i in range(grp.rank):
                        e = self._gen(grp, i)
                        one = self.pull_basic(
                            c, c2, a2, cv, self.push_basic(c, a, a2, hv, e)
                        )
                        two = self.push_basic(
                            c2, a, a2, hv, self.pull_basic(c, c2, a, cv, e)
                        )
                        if one != two:
                            raise ExtTableError(
                                f"actions fail to commute at {(c, c2, a, a2)}"
                            )


def ext_act(structure: "ExtriStructure", m: Mor, d: Ext, side: str) -> Ext:
    """The spec-level action entry point (``side`` is "left" or "right")."""
    if side == "left":
        return structure.ext.act_left(m, d)
    if side == "right":
        return structure.ext.act_right(m, d)
    raise ExtActionError(f"side must be 'left' or 'right', got {side!r}")


class Realization:
    """Extensional table ``(over, by) -> {extension -> (x, y)}``.

    Entries must satisfy x: by -> middle and y: middle -> over; middles are
    not rank-capped even though the endpoint pairs are.
    """

    def __init__(
        self,
        cat: CategoryPresentation,
        ext: ExtTable,
        table: Mapping[tuple[Obj, Obj], Mapping[tuple, tuple[Mor, Mor]]],
    ):
        self.cat = cat
        self.ext = ext
        self.table = {pair: dict(rows) for pair, rows in table.items()}
        self._validate()

    def _validate(self) -> None:
        for (over, by), rows in self.table.items():
            shape = self.ext.shape(over, by)
            if len(rows) != shape.size:
                raise RealizationError(
                    f"realization at {(over, by)} covers {len(rows)} of "
                    f"{shape.size} classes"
                )
            for key, (x, y) in rows.items():
                if x.src != by or y.dst != over or x.dst != y.src:
                    raise RealizationError(
                        f"realization of {key} at {(over, by)} has bad endpoints"
                    )
                if not self.cat.is_zero_mor(self.cat.compose(y, x)):
                    raise RealizationError(
                        f"realization of {key} at {(over, by)}: y∘x ≠ 0"
                    )

    def has_pair(self, over: Obj, by: Obj) -> bool:
        return (over, by) in self.table

    def realize(self, d: Ext) -> tuple[Mor, Mor]:
        rows = self.table.get((d.over, d.by))
        if rows is None:
            raise CapError(
                f"no realization stored for pair ({d.over!r}, {d.by!r}); "
                "outside the rank cap"
            )
        return rows[d.entries]

    def matches(self, d: Ext, x: Mor, y: Mor) -> bool:
        """Is (x, y) a representative of the class of d?"""
        stored = self.realize(d)
        return seq_equivalent(self.cat, (x, y), stored) is not None

    def conflations(self) -> Iterator[tuple[Ext, Mor, Mor]]:
        """All stored (class, x, y) triples in deterministic order."""
        for pair in sorted(self.table):
            shape = self.ext.shape(*pair)
            for flat in shape.group.elements():
                d = shape.unpack(flat)
                x, y = self.table[pair][d.entries]
                yield d, x, y


@dataclass
class ExtriStructure:
    """A presented category with extension groups and realizations."""

    cat: CategoryPresentation
    ext: ExtTable
    real: Realization
    verified_level: str = "unchecked"
    notes: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.cat.name

    def capped_objects(self) -> list[Obj]:
        return list(self.cat.objects(self.cat.rank_cap))

    def zero_ext(self, over: Obj, by: Obj) -> Ext:
        return self.ext.zero(over, by)


# -- formal reversal --------------------------------------------------------------
#
# Every condition on a structure has a mirror-image twin obtained by turning
# all arrows around. Rather than hand-writing each twin check, we materialize
# the reversed presentation once: hom(a, b) trades places with hom(b, a),
# composition tables transpose, the extension groups swap their two slots and
# the covariant/contravariant action tables trade roles, and each realization
# runs backwards. Reversing twice gives back the original data.


def op_mor(m: Mor) -> Mor:
    """The same morphism viewed in the reversed presentation (entry transpose)."""
    entries = tuple(
        tuple(m.entries[j][i] for j in range(m.dst.rank)) for i in range(m.src.rank)
    )
    return Mor(m.dst, m.src, entries)


def opposite_category(cat: CategoryPresentation) -> CategoryPresentation:
    homs = {(b, a): grp for (a, b), grp in cat._homs.items()}
    gen_names = {(b, a): names for (a, b), names in cat.gen_names.items()}
    compose = {}
    for (a, b, c), table in cat._compose.items():
        # table[j][i] composes gen j of hom(b,c) after gen i of hom(a,b); in
        # the reversed presentation that same value is gen i composed after
        # gen j, filed under the reversed key.
        na = cat.hom_basic(a, b).rank
        nc = cat.hom_basic(b, c).rank
        compose[(c, b, a)] = tuple(
            tuple(table[j][i] for j in range(nc)) for i in range(na)
        )
    return CategoryPresentation(
        cat.basics,
        homs,
        gen_names,
        compose,
        cat.identities,
        rank_cap=cat.rank_cap,
        name=f"{cat.name}^rev" if cat.name else "",
    )


def op_ext(d: Ext) -> Ext:
    """An extension class re-indexed for the reversed presentation."""
    entries = tuple(
        tuple(d.entries[j][i] for j in range(d.by.rank)) for i in range(d.over.rank)
    )
    return Ext(d.by, d.over, entries)


def opposite_structure(s: ExtriStructure) -> ExtriStructure:
    """The whole structure with all arrows reversed (an involution)."""
    op_cat = opposite_category(s.cat)
    groups = {(a, c): grp for (c, a), grp in s.ext._groups.items()}
    push = {(a, c, c2): tbl for (c, c2, a), tbl in s.ext._pull.items()}
    pull = {(a, a2, c): tbl for (c, a, a2), tbl in s.ext._push.items()}
    op_table = ExtTable(op_cat, groups, push, pull)
    real_table: dict = {}
    for (over, by), rows in s.real.table.items():
        flipped = {}
        for key, (x, y) in rows.items():
            tkey = tuple(
                tuple(key[j][i] for j in range(by.rank)) for i in range(over.rank)
            )
            flipped[tkey] = (op_mor(y), op_mor(x))
        real_table[(by, over)] = flipped
    op_real = Realization(op_cat, op_table, real_table)
    return ExtriStructure(
        op_cat,
        op_table,
        op_real,
        verified_level="unchecked",
        notes={"reversed_from": s.name},
    )

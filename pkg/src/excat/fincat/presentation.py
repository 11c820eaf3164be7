"""Finitely presented additive categories.

A presentation lists basic objects, a finite abelian hom group for every
ordered pair of basics, generator-level composition tables, and identity
elements. General objects are sorted formal sums of basics; morphisms are
block matrices over the basic hom groups. Composition tables are checked for
bilinearity well-definedness, associativity, and the unit laws at load time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .groups import FinAb, Vector


class PresentationError(ValueError):
    """The presentation data is inconsistent (bad tables, missing ids)."""


class CompositionShapeError(ValueError):
    """Attempted to compose morphisms whose endpoints do not match."""


class SequenceEndpointError(ValueError):
    """Two sequences cannot be compared: their endpoints differ."""


class CapError(RuntimeError):
    """A search or construction exceeded the configured rank cap."""


@dataclass(frozen=True, order=True)
class Obj:
    """A formal direct sum of basic objects, kept sorted; ``()`` is zero."""

    parts: tuple[str, ...]

    @staticmethod
    def of(*parts: str) -> "Obj":
        return Obj(tuple(sorted(parts)))

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def __repr__(self) -> str:
        return "Obj(0)" if self.is_zero else "Obj(%s)" % "+".join(self.parts)


ZERO_OBJ = Obj(())


@dataclass(frozen=True, order=True)
class Mor:
    """A block-matrix morphism; ``entries[i][j]`` lives in hom(src[j], dst[i])."""

    src: Obj
    dst: Obj
    entries: tuple[tuple[Vector, ...], ...]

    def __repr__(self) -> str:
        return f"Mor({self.src!r}->{self.dst!r}, {self.entries})"


@dataclass(frozen=True)
class Subcat:
    """A full additive subcategory spanned by a set of basic objects."""

    members: frozenset[str]

    @staticmethod
    def of(*ids: str) -> "Subcat":
        return Subcat(frozenset(ids))

    def contains(self, x: Obj) -> bool:
        return all(p in self.members for p in x.parts)

    def objects(self, max_rank: int) -> Iterator[Obj]:
        """Subcategory objects of rank <= max_rank, smallest first."""
        basics = sorted(self.members)
        for r in range(max_rank + 1):
            for combo in itertools.combinations_with_replacement(basics, r):
                yield Obj(tuple(combo))


class HomShape:
    """Coordinate bookkeeping for hom(X, Y) as one flat product group."""

    def __init__(self, cat: "CategoryPresentation", src: Obj, dst: Obj):
        self.cat = cat
        self.src = src
        self.dst = dst
        self.groups = tuple(
            tuple(cat.hom_basic(a, b) for a in src.parts) for b in dst.parts
        )
        orders: list[int] = []
        for row in self.groups:
            for g in row:
                orders.extend(g.orders)
        self.group = FinAb(tuple(orders))

    @property
    def size(self) -> int:
        return self.group.size

    def pack(self, f: Mor) -> Vector:
        flat: list[int] = []
        for row in f.entries:
            for entry in row:
                flat.extend(entry)
        return tuple(flat)

    def unpack(self, flat: Sequence[int]) -> Mor:
        pos = 0
        rows = []
        for row in self.groups:
            out = []
            for g in row:
                n = g.rank
                out.append(g.reduce(flat[pos : pos + n]))
                pos += n
            rows.append(tuple(out))
        return Mor(self.src, self.dst, tuple(rows))

    def elements(self) -> Iterator[Mor]:
        for flat in self.group.elements():
            yield self.unpack(flat)

    def zero(self) -> Mor:
        return self.unpack(self.group.zero())


class CategoryPresentation:
    """See the module docstring; this is the ambient additive category.

    Parameters
    ----------
    basics:
        Basic object identifiers, in declaration order.
    homs:
        Mapping ``(src, dst) -> FinAb``; omitted pairs get the zero group.
    gen_names:
        Mapping ``(src, dst) -> tuple of generator names`` (for parsing and
        serialization; lengths must match the group ranks).
    compose:
        Mapping ``(a, b, c) -> table`` with ``table[j][i]`` the composite of
        generator ``j`` of hom(b, c) with generator ``i`` of hom(a, b), as an
        element of hom(a, c).
    identities:
        Mapping ``basic -> element of hom(basic, basic)``.
    rank_cap:
        Bound on formal-sum length used by every enumeration.
    """

    def __init__(
        self,
        basics: Sequence[str],
        homs: Mapping[tuple[str, str], FinAb],
        gen_names: Mapping[tuple[str, str], tuple[str, ...]],
        compose: Mapping[tuple[str, str, str], tuple[tuple[Vector, ...], ...]],
        identities: Mapping[str, Vector],
        rank_cap: int = 3,
        name: str = "",
    ):
        if len(set(basics)) != len(basics):
            raise PresentationError("duplicate basic ids")
        self.basics = tuple(basics)
        self.name = name
        self._homs = {}
        self.gen_names = {}
        for pair, group in homs.items():
            if pair[0] not in self.basics or pair[1] not in self.basics:
                raise PresentationError(f"hom declared on unknown basics {pair}")
            self._homs[pair] = group
            names = tuple(gen_names.get(pair, ()))
            if not names:
                names = tuple(f"g_{pair[0]}_{pair[1]}_{i}" for i in range(group.rank))
            if len(names) != group.rank:
                raise PresentationError(f"generator names of {pair} do not match rank")
            self.gen_names[pair] = names
        self._compose = dict(compose)
        self.identities = dict(identities)
        if rank_cap < 1:
            raise PresentationError("rank_cap must be positive")
        self.rank_cap = rank_cap
        self._hom_shape_cache: dict[tuple[Obj, Obj], HomShape] = {}
        self._validate()

    # -- basic-level structure ------------------------------------------------

    def hom_basic(self, a: str, b: str) -> FinAb:
        return self._homs.get((a, b), FinAb(()))

    def compose_basic(self, a: str, b: str, c: str, g: Vector, f: Vector) -> Vector:
        """Composite of g in hom(b,c) with f in hom(a,b), bilinearly."""
        target = self.hom_basic(a, c)
        out = target.zero()
        table = self._compose.get((a, b, c))
        if table is None:
            if self.hom_basic(a, b).rank and self.hom_basic(b, c).rank and target.rank:
                raise PresentationError(f"missing composition table for {(a, b, c)}")
            return out
        for j, gj in enumerate(g):
            if gj == 0:
                continue
            row = table[j]
            for i, fi in enumerate(f):
                if fi == 0:
                    continue
                out = target.add(out, target.smul(gj * fi, row[i]))
        return out

    def identity_basic(self, a: str) -> Vector:
        try:
            return self.identities[a]
        except KeyError:
            raise PresentationError(f"no identity element for basic {a!r}") from None

    def _validate(self) -> None:
        for (a, b), group in self._homs.items():
            if group.rank and (a not in self.identities or b not in self.identities):
                raise PresentationError(f"basics of {(a, b)} lack identities")
        for (a, b, c), table in self._compose.items():
            gb = self.hom_basic(b, c)
            ga = self.hom_basic(a, b)
            gc = self.hom_basic(a, c)
            if len(table) != gb.rank or any(len(row) != ga.rank for row in table):
                raise PresentationError(f"composition table shape for {(a, b, c)}")
            # Bilinear well-definedness: orders must be respected.
            for j in range(gb.rank):
                for i in range(ga.rank):
                    val = gc.reduce(table[j][i])
                    if any(gc.smul(gb.orders[j], val)) or any(gc.smul(ga.orders[i], val)):
                        raise PresentationError(
                            f"composition {(a, b, c)}[{j}][{i}] breaks bilinearity"
                        )
        for a in self.basics:
            ga = self.hom_basic(a, a)
            if ga.rank == 0:
                continue
            ida = ga.reduce(self.identity_basic(a))
            for b in self.basics:
                gab = self.hom_basic(a, b)
                for i in range(gab.rank):
                    gen = tuple(1 if k == i else 0 for k in range(gab.rank))
                    if self.compose_basic(a, a, b, gen, ida) != gen:
                        raise PresentationError(f"id_{a} is not a right unit on hom({a},{b})")
                gba = self.hom_basic(b, a)
                for i in range(gba.rank):
                    gen = tuple(1 if k == i else 0 for k in range(gba.rank))
                    if self.compose_basic(b, a, a, ida, gen) != gen:
                        raise PresentationError(f"id_{a} is not a left unit on hom({b},{a})")
        for a, b, c, d in itertools.product(self.basics, repeat=4):
            gab, gbc, gcd = self.hom_basic(a, b), self.hom_basic(b, c), self.hom_basic(c, d)
            if not (gab.rank and gbc.rank and gcd.rank):
                continue
            for i in range(gab.rank):
                f = tuple(1 if k == i else 0 for k in range(gab.rank))
                for j in range(gbc.rank):
                    g = tuple(1 if k == j else 0 for k in range(gbc.rank))
                    gf = self.compose_basic(a, b, c, g, f)
                    for l in range(gcd.rank):
                        h = tuple(1 if k == l else 0 for k in range(gcd.rank))
                        hg = self.compose_basic(b, c, d, h, g)
                        if self.compose_basic(a, c, d, h, gf) != self.compose_basic(
                            a, b, d, hg, f
                        ):
                            raise PresentationError(
                                f"associativity fails on generators {(a, b, c, d)}"
                            )

    # -- objects and block matrices -------------------------------------------

    def hom_shape(self, src: Obj, dst: Obj) -> HomShape:
        key = (src, dst)
        shape = self._hom_shape_cache.get(key)
        if shape is None:
            shape = HomShape(self, src, dst)
            self._hom_shape_cache[key] = shape
        return shape

    def zero_mor(self, src: Obj, dst: Obj) -> Mor:
        return self.hom_shape(src, dst).zero()

    def identity(self, x: Obj) -> Mor:
        rows = []
        for i, bi in enumerate(x.parts):
            row = []
            for j, bj in enumerate(x.parts):
                g = self.hom_basic(bj, bi)
                row.append(self.identity_basic(bi) if i == j else g.zero())
            rows.append(tuple(row))
        return Mor(x, x, tuple(rows))

    def compose(self, g: Mor, f: Mor) -> Mor:
        if f.dst != g.src:
            raise CompositionShapeError(f"cannot compose {g.src!r} after {f.dst!r}")
        mids = f.dst.parts
        rows = []
        for i, bi in enumerate(g.dst.parts):
            row = []
            for k, bk in enumerate(f.src.parts):
                target = self.hom_basic(bk, bi)
                acc = target.zero()
                for j, bj in enumerate(mids):
                    acc = target.add(
                        acc, self.compose_basic(bk, bj, bi, g.entries[i][j], f.entries[j][k])
                    )
                row.append(acc)
            rows.append(tuple(row))
        return Mor(f.src, g.dst, tuple(rows))

    def add_mor(self, f: Mor, g: Mor) -> Mor:
        assert f.src == g.src and f.dst == g.dst
        rows = []
        for i, bi in enumerate(f.dst.parts):
            row = []
            for j, bj in enumerate(f.src.parts):
                grp = self.hom_basic(bj, bi)
                row.append(grp.add(f.entries[i][j], g.entries[i][j]))
            rows.append(tuple(row))
        return Mor(f.src, f.dst, tuple(rows))

    def neg_mor(self, f: Mor) -> Mor:
        rows = []
        for i, bi in enumerate(f.dst.parts):
            row = []
            for j, bj in enumerate(f.src.parts):
                row.append(self.hom_basic(bj, bi).neg(f.entries[i][j]))
            rows.append(tuple(row))
        return Mor(f.src, f.dst, tuple(rows))

    def sub_mor(self, f: Mor, g: Mor) -> Mor:
        return self.add_mor(f, self.neg_mor(g))

    def is_zero_mor(self, f: Mor) -> bool:
        return not any(any(entry) for row in f.entries for entry in row)

    def mor_eq(self, f: Mor, g: Mor) -> bool:
        return f.src == g.src and f.dst == g.dst and f.entries == g.entries

    # -- enumeration ----------------------------------------------------------

    def objects(self, max_rank: int | None = None) -> Iterator[Obj]:
        """All objects of rank <= max_rank (default rank_cap), by rank then lex."""
        cap = self.rank_cap if max_rank is None else max_rank
        basics = sorted(self.basics)
        for r in range(cap + 1):
            for combo in itertools.combinations_with_replacement(basics, r):
                yield Obj(tuple(combo))

    def restrict(self, f: Mor, src_idx: Sequence[int], dst_idx: Sequence[int]) -> Mor:
        """The submatrix of f on the chosen source/target summands."""
        src = Obj(tuple(f.src.parts[j] for j in src_idx))
        dst = Obj(tuple(f.dst.parts[i] for i in dst_idx))
        entries = tuple(
            tuple(f.entries[i][j] for j in src_idx) for i in dst_idx
        )
        return Mor(src, dst, entries)

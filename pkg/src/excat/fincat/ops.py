"""Operations on presented categories: composition, isos, sums, searches.

The search primitives here are the backbone of every axiom check and witness
hunt in the rest of the package. They all reduce to affine systems over the
hom groups (see groups.solve_system); whenever a witness must additionally be
invertible, the solution coset is walked in a deterministic order.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Iterator, Sequence

from .groups import solve_system
from .presentation import (
    CapError,
    CategoryPresentation,
    CompositionShapeError,
    Mor,
    Obj,
    SequenceEndpointError,
)

# Cosets up to this size are materialized and sorted so that witnesses are
# lexicographically least in the packed-morphism encoding.
SORT_BOUND = 4096
# Larger cosets are walked unsorted, at most this many steps, then reported
# as exhausted (an honest "not found within cap").
ITER_BOUND = 1 << 17
# When hunting an *invertible* coset element, walk this deterministic prefix
# and then draw this many seeded random probes. Isomorphisms are dense in the
# cosets that actually occur (unit groups of finite endomorphism rings), so a
# miss after hundreds of draws is a strong — though honest, inconclusive —
# signal, reported as "not found within cap".
WALK_BOUND = 64
SAMPLE_TRIES = 256


def compose(cat: CategoryPresentation, g: Mor, f: Mor) -> Mor:
    """g after f; raises CompositionShapeError on endpoint mismatch."""
    return cat.compose(g, f)


def compose_many(cat: CategoryPresentation, *mors: Mor) -> Mor:
    out = mors[0]
    for m in mors[1:]:
        out = cat.compose(out, m)
    return out


# -- direct sums ---------------------------------------------------------------


def sum_objects(x: Obj, y: Obj) -> tuple[Obj, list[int], list[int]]:
    """Canonical (sorted) sum with the placement of each original summand."""
    tagged = [(p, 0, i) for i, p in enumerate(x.parts)] + [
        (p, 1, j) for j, p in enumerate(y.parts)
    ]
    tagged.sort()
    z = Obj(tuple(t[0] for t in tagged))
    pos_x = [0] * x.rank
    pos_y = [0] * y.rank
    for slot, (_, origin, idx) in enumerate(tagged):
        if origin == 0:
            pos_x[idx] = slot
        else:
            pos_y[idx] = slot
    return z, pos_x, pos_y


def injection(cat: CategoryPresentation, x: Obj, z: Obj, pos: Sequence[int]) -> Mor:
    """The canonical split mono x -> z hitting the slots listed in pos."""
    rows = []
    for i, bi in enumerate(z.parts):
        row = []
        for j, bj in enumerate(x.parts):
            g = cat.hom_basic(bj, bi)
            row.append(cat.identity_basic(bi) if pos[j] == i else g.zero())
        rows.append(tuple(row))
    return Mor(x, z, tuple(rows))


def projection(cat: CategoryPresentation, z: Obj, x: Obj, pos: Sequence[int]) -> Mor:
    """The canonical split epi z -> x reading off the slots listed in pos."""
    rows = []
    for i, bi in enumerate(x.parts):
        row = []
        for j, bj in enumerate(z.parts):
            g = cat.hom_basic(bj, bi)
            row.append(cat.identity_basic(bi) if pos[i] == j else g.zero())
        rows.append(tuple(row))
    return Mor(z, x, tuple(rows))


def direct_sum(
    cat: CategoryPresentation, f1: Mor, f2: Mor, enforce_cap: bool = True
) -> Mor:
    """Block-diagonal sum (with canonical re-sorting of both endpoints)."""
    src, spos1, spos2 = sum_objects(f1.src, f2.src)
    dst, dpos1, dpos2 = sum_objects(f1.dst, f2.dst)
    if enforce_cap and max(src.rank, dst.rank) > cat.rank_cap:
        raise CapError(
            f"direct sum of rank {src.rank}/{dst.rank} exceeds rank cap {cat.rank_cap}"
        )
    rows = []
    for i, bi in enumerate(dst.parts):
        row = []
        for j, bj in enumerate(src.parts):
            row.append(cat.hom_basic(bj, bi).zero())
        rows.append(list(row))
    for i in range(f1.dst.rank):
        for j in range(f1.src.rank):
            rows[dpos1[i]][spos1[j]] = f1.entries[i][j]
    for i in range(f2.dst.rank):
        for j in range(f2.src.rank):
            rows[dpos2[i]][spos2[j]] = f2.entries[i][j]
    return Mor(src, dst, tuple(tuple(r) for r in rows))


def mor_into_sum(cat: CategoryPresentation, f1: Mor, f2: Mor) -> Mor:
    """The column [f1; f2]: X -> Y1⊕Y2 for morphisms out of a common source."""
    if f1.src != f2.src:
        raise CompositionShapeError(
            f"column assembly needs a common source, got {f1.src!r} and {f2.src!r}"
        )
    z, pos1, pos2 = sum_objects(f1.dst, f2.dst)
    i1 = injection(cat, f1.dst, z, pos1)
    i2 = injection(cat, f2.dst, z, pos2)
    return cat.add_mor(cat.compose(i1, f1), cat.compose(i2, f2))


def mor_from_sum(cat: CategoryPresentation, f1: Mor, f2: Mor) -> Mor:
    """The row [f1, f2]: X1⊕X2 -> Y for morphisms into a common target."""
    if f1.dst != f2.dst:
        raise CompositionShapeError(
            f"row assembly needs a common target, got {f1.dst!r} and {f2.dst!r}"
        )
    z, pos1, pos2 = sum_objects(f1.src, f2.src)
    p1 = projection(cat, z, f1.src, pos1)
    p2 = projection(cat, z, f2.src, pos2)
    return cat.add_mor(cat.compose(f1, p1), cat.compose(f2, p2))


# -- affine searches over morphism tuples ---------------------------------------


class MorSolutions:
    """Solutions of an affine system whose unknowns are morphisms."""

    def __init__(self, cat, shapes, affine):
        self.cat = cat
        self.shapes = shapes
        self.affine = affine
        self._splits = []
        pos = 0
        for s in shapes:
            self._splits.append((pos, pos + s.group.rank, s))
            pos += s.group.rank

    @property
    def size(self) -> int:
        return self.affine.size

    def _unpack(self, flat) -> tuple[Mor, ...]:
        return tuple(s.unpack(flat[a:b]) for a, b, s in self._splits)

    def __iter__(self) -> Iterator[tuple[Mor, ...]]:
        for flat in self.affine:
            yield self._unpack(flat)

    def iter_witnesses(self) -> Iterator[tuple[Mor, ...]]:
        """Deterministic witness order: sorted when small, bounded otherwise."""
        if self.size <= SORT_BOUND:
            for flat in sorted(self.affine):
                yield self._unpack(flat)
        else:
            for i, flat in enumerate(self.affine):
                if i >= ITER_BOUND:
                    return
                yield self._unpack(flat)

    def first(self) -> tuple[Mor, ...] | None:
        for sol in self.iter_witnesses():
            return sol
        return None

    def sample(self, rng) -> tuple[Mor, ...]:
        return self._unpack(self.affine.sample(rng))


def solve_mor(
    cat: CategoryPresentation,
    slots: Sequence[tuple[Obj, Obj]],
    residual: Callable[[tuple[Mor, ...]], list[Mor]],
) -> MorSolutions | None:
    """Solve ``residual(mors) == 0`` for a tuple of unknown morphisms.

    ``residual`` must be affine in the unknowns (compositions with fixed
    morphisms, sums, extension actions). Returns None when inconsistent.
    """
    shapes = [cat.hom_shape(src, dst) for src, dst in slots]
    orders: list[int] = []
    for s in shapes:
        orders.extend(s.group.orders)
    splits = []
    pos = 0
    for s in shapes:
        splits.append((pos, pos + s.group.rank, s))
        pos += s.group.rank

    def residual_flat(flat):
        mors = tuple(s.unpack(flat[a:b]) for a, b, s in splits)
        out = []
        for r in residual(mors):
            shape = cat.hom_shape(r.src, r.dst)
            out.append((shape.pack(r), shape.group.orders))
        return out

    affine = solve_system(orders, residual_flat)
    if affine is None:
        return None
    return MorSolutions(cat, shapes, affine)


# -- isomorphisms ---------------------------------------------------------------


def is_isomorphism(cat: CategoryPresentation, f: Mor) -> Mor | None:
    """The two-sided inverse of f, or None.

    For endomorphism shapes a single left-inverse solve suffices: in the
    finite monoid End(B), left-invertible elements are invertible.
    """
    src, dst = f.src, f.dst
    if src == dst:
        sols = solve_mor(
            cat, [(dst, src)], lambda ms: [cat.sub_mor(cat.compose(ms[0], f), cat.identity(src))]
        )
        if sols is None:
            return None
        got = sols.first()
        if got is None:
            return None
        g = got[0]
        if cat.mor_eq(cat.compose(f, g), cat.identity(dst)):
            return g
        # Left inverse exists but is not two-sided: impossible over a finite
        # endomorphism monoid; reaching this means corrupt tables.
        raise AssertionError("left inverse is not two-sided on an endo shape")
    sols = solve_mor(
        cat,
        [(dst, src)],
        lambda ms: [
            cat.sub_mor(cat.compose(ms[0], f), cat.identity(src)),
            cat.sub_mor(cat.compose(f, ms[0]), cat.identity(dst)),
        ],
    )
    if sols is None:
        return None
    got = sols.first()
    return got[0] if got is not None else None


def invertible(cat: CategoryPresentation, f: Mor) -> bool:
    return is_isomorphism(cat, f) is not None


def retraction_of(cat: CategoryPresentation, f: Mor) -> Mor | None:
    """Some r with r∘f = id (the lexicographically least one), if any."""
    sols = solve_mor(
        cat,
        [(f.dst, f.src)],
        lambda ms: [cat.sub_mor(cat.compose(ms[0], f), cat.identity(f.src))],
    )
    if sols is None:
        return None
    got = sols.first()
    return got[0] if got is not None else None


def section_of(cat: CategoryPresentation, f: Mor) -> Mor | None:
    """Some s with f∘s = id (the lexicographically least one), if any."""
    sols = solve_mor(
        cat,
        [(f.dst, f.src)],
        lambda ms: [cat.sub_mor(cat.compose(f, ms[0]), cat.identity(f.dst))],
    )
    if sols is None:
        return None
    got = sols.first()
    return got[0] if got is not None else None


# -- sequence equivalence --------------------------------------------------------


def _split_bridge(cat: CategoryPresentation, x: Mor, y: Mor) -> Mor | None:
    """For a split sequence A -x-> B -y-> C, an iso B -> A⊕C, else None.

    Any retraction r of x yields the iso [r; y] (its composite with any
    sequence iso to the canonical split is unitriangular).
    """
    r = retraction_of(cat, x)
    if r is None:
        return None
    a, c = x.src, y.dst
    z, pos_a, pos_c = sum_objects(a, c)
    ia = injection(cat, a, z, pos_a)
    ic = injection(cat, c, z, pos_c)
    u = cat.add_mor(cat.compose(ia, r), cat.compose(ic, y))
    if is_isomorphism(cat, u) is None:
        return None
    return u


def seq_equivalent(
    cat: CategoryPresentation,
    s1: tuple[Mor, Mor],
    s2: tuple[Mor, Mor],
) -> Mor | None:
    """An iso b between the middles with b∘x = x′ and y′∘b = y, or None.

    The witness is the least solution in the packed encoding when the
    solution coset is small; for huge cosets a split-sequence fast path is
    tried first, then a bounded walk plus seeded random probes of the coset
    (absence then means "not found within cap", not a nonexistence proof).
    """
    x1, y1 = s1
    x2, y2 = s2
    if x1.dst != y1.src or x2.dst != y2.src:
        raise SequenceEndpointError("sequences are not composable pairs")
    if x1.src != x2.src or y1.dst != y2.dst:
        raise SequenceEndpointError(
            f"endpoint mismatch: {x1.src!r}->{y1.dst!r} vs {x2.src!r}->{y2.dst!r}"
        )
    b1, b2 = x1.dst, x2.dst
    if b1.parts != b2.parts:
        # Distinct sorted multisets: not isomorphic at desk scale
        # (Krull-Schmidt discipline; see the package docs).
        return None
    sols = solve_mor(
        cat,
        [(b1, b2)],
        lambda ms: [
            cat.sub_mor(cat.compose(ms[0], x1), x2),
            cat.sub_mor(cat.compose(y2, ms[0]), y1),
        ],
    )
    if sols is None:
        return None
    if sols.size <= SORT_BOUND:
        for (b,) in sols.iter_witnesses():
            if is_isomorphism(cat, b) is not None:
                return b
        return None
    u1 = _split_bridge(cat, x1, y1)
    if u1 is not None:
        u2 = _split_bridge(cat, x2, y2)
        if u2 is not None:
            u2_inv = is_isomorphism(cat, u2)
            assert u2_inv is not None
            b = cat.compose(u2_inv, u1)
            if cat.mor_eq(cat.compose(b, x1), x2) and cat.mor_eq(
                cat.compose(y2, b), y1
            ):
                return b
    for i, (b,) in enumerate(sols):
        if i >= WALK_BOUND:
            break
        if is_isomorphism(cat, b) is not None:
            return b
    rng = random.Random(0x5EC)
    for _ in range(SAMPLE_TRIES):
        (b,) = sols.sample(rng)
        if is_isomorphism(cat, b) is not None:
            return b
    return None


# -- cancellation tests -----------------------------------------------------------


def is_mono(cat: CategoryPresentation, f: Mor) -> bool:
    """Left cancellation, tested against all basic objects.

    Testing on basics is exhaustive: hom(⊕T, X) is the product of the
    hom(T, X), so cancellation for compound test objects follows.
    """
    for t in cat.basics:
        tobj = Obj((t,))
        sols = solve_mor(cat, [(tobj, f.src)], lambda ms: [cat.compose(f, ms[0])])
        assert sols is not None  # homogeneous systems are consistent
        if sols.size != 1:
            return False
    return True


def is_epi(cat: CategoryPresentation, f: Mor) -> bool:
    for t in cat.basics:
        tobj = Obj((t,))
        sols = solve_mor(cat, [(f.dst, tobj)], lambda ms: [cat.compose(ms[0], f)])
        assert sols is not None
        if sols.size != 1:
            return False
    return True


# -- enumeration -------------------------------------------------------------------

HOM_ENUM_LIMIT = 1 << 20


def enumerate_objects(cat: CategoryPresentation, cap: int | None = None) -> Iterator[Obj]:
    cap = cat.rank_cap if cap is None else cap
    if cap > cat.rank_cap:
        raise CapError(f"cap {cap} exceeds rank_cap {cat.rank_cap}")
    return cat.objects(cap)


def enumerate_homs(cat: CategoryPresentation, src: Obj, dst: Obj) -> Iterator[Mor]:
    shape = cat.hom_shape(src, dst)
    if shape.size > HOM_ENUM_LIMIT:
        raise CapError(f"hom set of size {shape.size} is too large to enumerate")
    return shape.elements()


def enumerate_items(cat: CategoryPresentation, kind: str, cap: int | None = None):
    """The spec-level enumeration entry point: objects, morphisms or pairs."""
    cap = cat.rank_cap if cap is None else cap
    if cap > cat.rank_cap:
        raise CapError(f"cap {cap} exceeds rank_cap {cat.rank_cap}")
    if kind == "objects":
        yield from cat.objects(cap)
    elif kind == "morphisms":
        for x in cat.objects(cap):
            for y in cat.objects(cap):
                yield from enumerate_homs(cat, x, y)
    elif kind == "pairs":
        for x, y, z in itertools.product(cat.objects(cap), repeat=3):
            for f in enumerate_homs(cat, x, y):
                for g in enumerate_homs(cat, y, z):
                    yield (g, f)
    else:
        raise ValueError(f"unknown enumeration kind {kind!r}")

"""Structure-preserving functors between two table-backed structures.

A functor here is a finite amount of data: where each basic object goes
(any object of the target, possibly the zero object), where each hom
generator goes, and — the part that makes it structure-preserving — a
family ``phi`` of group maps on the extension groups, recorded on basic
pairs. Everything else (sums of objects, arbitrary morphisms, arbitrary
classes) is determined by additivity, and the apply_* methods compute that
extension blockwise.

All the checks below work at generator level on basic pairs. That is
complete, not a sampling: hom groups and extension groups of sums decompose
as products of the basic-pair groups, and every condition checked is
additive in each argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..fincat.groups import Subgroup
from ..fincat.ops import (
    injection,
    is_isomorphism,
    projection,
    sum_objects,
)
from ..fincat.presentation import ZERO_OBJ, Mor, Obj
from .structure import Ext, ExtriStructure


@dataclass
class FunctorReport:
    checked: int
    skipped: int
    issues: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


@dataclass
class ExactFunctor:
    """(F, phi): an additive functor together with its extension-group maps.

    obj_map:
        basic id -> target object (rank 0..cap; the zero object is allowed,
        e.g. for functors that kill a subcategory).
    gen_map:
        (src basic a, src basic b) -> images of the hom(a, b) generators,
        each a morphism obj_map[a] -> obj_map[b] in the target. Pairs whose
        hom group is trivial may be omitted.
    phi:
        (src basic c, src basic a) -> images of the E(c, a) generators,
        each a class over obj_map[c] by obj_map[a] in the target. Pairs
        with trivial extension group may be omitted.
    """

    src: ExtriStructure
    dst: ExtriStructure
    obj_map: Mapping[str, Obj]
    gen_map: Mapping[tuple[str, str], tuple[Mor, ...]]
    phi: Mapping[tuple[str, str], tuple[Ext, ...]]
    name: str = ""
    _layouts: dict[Obj, tuple[Obj, tuple[tuple[int, ...], ...]]] = field(
        default_factory=dict, repr=False, compare=False
    )

    def _layout(self, x: Obj) -> tuple[Obj, tuple[tuple[int, ...], ...]]:
        """Image object plus, per part of x, its slots in the image."""
        got = self._layouts.get(x)
        if got is None:
            total = ZERO_OBJ
            positions: list[tuple[int, ...]] = []
            for p in x.parts:
                total2, pos_old, pos_new = sum_objects(total, self.obj_map[p])
                positions = [
                    tuple(pos_old[i] for i in slots) for slots in positions
                ]
                positions.append(tuple(pos_new))
                total = total2
            got = (total, tuple(positions))
            self._layouts[x] = got
        return got

    def apply_obj(self, x: Obj) -> Obj:
        return self._layout(x)[0]

    def _basic_mor(self, p: str, q: str, coeffs) -> Mor:
        shape = self.dst.cat.hom_shape(self.obj_map[p], self.obj_map[q])
        flat = shape.group.zero()
        gens = self.gen_map.get((p, q), ())
        for c, g in zip(coeffs, gens):
            flat = shape.group.add(flat, shape.group.smul(c, shape.pack(g)))
        return shape.unpack(flat)

    def apply_mor(self, f: Mor) -> Mor:
        dcat = self.dst.cat
        src_img, src_pos = self._layout(f.src)
        dst_img, dst_pos = self._layout(f.dst)
        out = dcat.zero_mor(src_img, dst_img)
        for i, q in enumerate(f.dst.parts):
            into = injection(dcat, self.obj_map[q], dst_img, dst_pos[i])
            for j, p in enumerate(f.src.parts):
                block = self._basic_mor(p, q, f.entries[i][j])
                if not any(any(cell) for row in block.entries for cell in row):
                    continue
                onto = projection(dcat, src_img, self.obj_map[p], src_pos[j])
                out = dcat.add_mor(
                    out, dcat.compose(into, dcat.compose(block, onto))
                )
        return out

    def _basic_ext(self, c: str, a: str, coeffs) -> Ext:
        shape = self.dst.ext.shape(self.obj_map[c], self.obj_map[a])
        flat = shape.group.zero()
        gens = self.phi.get((c, a), ())
        for co, g in zip(coeffs, gens):
            flat = shape.group.add(flat, shape.group.smul(co, shape.pack(g)))
        return shape.unpack(flat)

    def apply_ext(self, d: Ext) -> Ext:
        over_img, over_pos = self._layout(d.over)
        by_img, by_pos = self._layout(d.by)
        shape = self.dst.ext.shape(over_img, by_img)
        entries = [list(row) for row in shape.zero().entries]
        for i, a_part in enumerate(d.by.parts):
            for j, c_part in enumerate(d.over.parts):
                img = self._basic_ext(c_part, a_part, d.entries[i][j])
                for u, row in enumerate(img.entries):
                    for v, val in enumerate(row):
                        r, c = by_pos[i][u], over_pos[j][v]
                        grp = self.dst.ext.group(
                            over_img.parts[c], by_img.parts[r]
                        )
                        entries[r][c] = grp.add(entries[r][c], val)
        return Ext(over_img, by_img, tuple(tuple(row) for row in entries))


@dataclass
class ExactNatTrans:
    """A natural transformation between two parallel structure functors.

    ``components`` records one morphism F(p) -> G(p) per basic p of the
    shared source; components at sums are the block-diagonal assemblies.
    """

    f: ExactFunctor
    g: ExactFunctor
    components: Mapping[str, Mor]
    name: str = ""

    def component(self, x: Obj) -> Mor:
        dcat = self.f.dst.cat
        f_img, f_pos = self.f._layout(x)
        g_img, g_pos = self.g._layout(x)
        out = dcat.zero_mor(f_img, g_img)
        for j, p in enumerate(x.parts):
            into = injection(dcat, self.g.obj_map[p], g_img, g_pos[j])
            onto = projection(dcat, f_img, self.f.obj_map[p], f_pos[j])
            out = dcat.add_mor(
                out,
                dcat.compose(into, dcat.compose(self.components[p], onto)),
            )
        return out


def _unit_mors(cat, src: Obj, dst: Obj) -> list[Mor]:
    shape = cat.hom_shape(src, dst)
    n = shape.group.rank
    return [
        shape.unpack(tuple(1 if k == i else 0 for k in range(n)))
        for i in range(n)
    ]


def _unit_exts(table, over: Obj, by: Obj) -> list[Ext]:
    shape = table.shape(over, by)
    n = shape.group.rank
    return [
        shape.unpack(tuple(1 if k == i else 0 for k in range(n)))
        for i in range(n)
    ]


def identity_functor(s: ExtriStructure) -> ExactFunctor:
    obj_map = {p: Obj((p,)) for p in s.cat.basics}
    gen_map = {}
    phi = {}
    for a in s.cat.basics:
        for b in s.cat.basics:
            gens = _unit_mors(s.cat, Obj((a,)), Obj((b,)))
            if gens:
                gen_map[(a, b)] = tuple(gens)
            exts = _unit_exts(s.ext, Obj((b,)), Obj((a,)))
            if exts:
                phi[(b, a)] = tuple(exts)
    return ExactFunctor(s, s, obj_map, gen_map, phi, name="id")


def compose_exact(outer: ExactFunctor, inner: ExactFunctor) -> ExactFunctor:
    """The composite ``outer after inner``; its phi is the two phis stacked."""
    if inner.dst is not outer.src:
        raise ValueError("functors are not composable: endpoints differ")
    obj_map = {p: outer.apply_obj(x) for p, x in inner.obj_map.items()}
    gen_map = {
        key: tuple(outer.apply_mor(m) for m in mors)
        for key, mors in inner.gen_map.items()
    }
    phi = {
        key: tuple(outer.apply_ext(d) for d in exts)
        for key, exts in inner.phi.items()
    }
    name = ""
    if inner.name and outer.name:
        name = f"{outer.name}∘{inner.name}"
    return ExactFunctor(inner.src, outer.dst, obj_map, gen_map, phi, name=name)


def check_exact_functor(
    functor: ExactFunctor,
    src: ExtriStructure | None = None,
    dst: ExtriStructure | None = None,
) -> FunctorReport:
    """Verify functoriality, naturality of phi, and conflation transport.

    Functoriality and naturality are checked on generators of basic-pair
    groups, which determines them everywhere by additivity. Conflation
    transport re-realizes the image of every stored conflation in the
    target; images whose endpoint pair is missing from the target table are
    skipped and counted.
    """
    fun = functor
    src = src if src is not None else fun.src
    dst = dst if dst is not None else fun.dst
    scat, dcat = src.cat, dst.cat
    issues: list[str] = []
    checked = 0

    for p in scat.basics:
        if p not in fun.obj_map:
            raise ValueError(f"object map is missing basic {p!r}")
    for a in scat.basics:
        for b in scat.basics:
            want = scat.hom_basic(a, b).rank
            got = len(fun.gen_map.get((a, b), ()))
            if got not in (0, want) or (got == 0 and want > 0):
                raise ValueError(
                    f"generator images for hom({a!r}, {b!r}): expected "
                    f"{want}, got {got}"
                )
            want = src.ext.group(b, a).rank
            got = len(fun.phi.get((b, a), ()))
            if got not in (0, want) or (got == 0 and want > 0):
                raise ValueError(
                    f"phi images for the group over {b!r} by {a!r}: "
                    f"expected {want}, got {got}"
                )

    for p in scat.basics:
        pt = Obj((p,))
        image = fun.apply_mor(scat.identity(pt))
        if not dcat.mor_eq(image, dcat.identity(fun.apply_obj(pt))):
            issues.append(f"identity of {p!r} is not sent to an identity")
        checked += 1

    for a in scat.basics:
        for b in scat.basics:
            fs = _unit_mors(scat, Obj((a,)), Obj((b,)))
            for c in scat.basics:
                gs = _unit_mors(scat, Obj((b,)), Obj((c,)))
                for f in fs:
                    ff = fun.apply_mor(f)
                    for g in gs:
                        lhs = fun.apply_mor(scat.compose(g, f))
                        rhs = dcat.compose(fun.apply_mor(g), ff)
                        if not dcat.mor_eq(lhs, rhs):
                            issues.append(
                                f"composite of generators "
                                f"{a!r}->{b!r}->{c!r} is not preserved"
                            )
                        checked += 1

    for c in scat.basics:
        for a in scat.basics:
            deltas = _unit_exts(src.ext, Obj((c,)), Obj((a,)))
            if not deltas:
                continue
            for delta in deltas:
                fd = fun.apply_ext(delta)
                for a2 in scat.basics:
                    for m in _unit_mors(scat, Obj((a,)), Obj((a2,))):
                        lhs = fun.apply_ext(src.ext.act_left(m, delta))
                        rhs = dst.ext.act_left(fun.apply_mor(m), fd)
                        if lhs != rhs:
                            issues.append(
                                f"phi is not natural in the second argument "
                                f"at ({c!r}, {a!r}) along {a!r}->{a2!r}"
                            )
                        checked += 1
                for c2 in scat.basics:
                    for m in _unit_mors(scat, Obj((c2,)), Obj((c,))):
                        lhs = fun.apply_ext(src.ext.act_right(m, delta))
                        rhs = dst.ext.act_right(fun.apply_mor(m), fd)
                        if lhs != rhs:
                            issues.append(
                                f"phi is not natural in the first argument "
                                f"at ({c!r}, {a!r}) along {c2!r}->{c!r}"
                            )
                        checked += 1

    skipped = 0
    for d, x, y in src.real.conflations():
        fd = fun.apply_ext(d)
        if not dst.real.has_pair(fd.over, fd.by):
            skipped += 1
            continue
        if not dst.real.matches(fd, fun.apply_mor(x), fun.apply_mor(y)):
            issues.append(
                f"the image of the conflation realizing class {d.entries} "
                f"over {d.over!r} by {d.by!r} does not realize its phi image"
            )
        checked += 1

    return FunctorReport(checked, skipped, tuple(issues))


def check_exact_nat_trans(
    eta: ExactNatTrans,
    f: ExactFunctor | None = None,
    g: ExactFunctor | None = None,
) -> FunctorReport:
    """Verify naturality squares and the push/pull compatibility law.

    The law couples the two phi families: pushing a class image forward
    along the component at its foot equals pulling the other image back
    along the component at its head.
    """
    f = f if f is not None else eta.f
    g = g if g is not None else eta.g
    if f.src is not g.src or f.dst is not g.dst:
        raise ValueError("natural transformation endpoints differ")
    scat, dcat = f.src.cat, f.dst.cat
    dext = f.dst.ext
    issues: list[str] = []
    checked = 0

    for p in scat.basics:
        comp = eta.components.get(p)
        if comp is None:
            raise ValueError(f"missing component at basic {p!r}")
        if comp.src != f.obj_map[p] or comp.dst != g.obj_map[p]:
            raise ValueError(f"component at {p!r} has wrong endpoints")

    for a in scat.basics:
        for b in scat.basics:
            for m in _unit_mors(scat, Obj((a,)), Obj((b,))):
                lhs = dcat.compose(eta.components[b], f.apply_mor(m))
                rhs = dcat.compose(g.apply_mor(m), eta.components[a])
                if not dcat.mor_eq(lhs, rhs):
                    issues.append(
                        f"naturality square fails on a generator "
                        f"of hom({a!r}, {b!r})"
                    )
                checked += 1

    for c in scat.basics:
        for a in scat.basics:
            shape = f.src.ext.shape(Obj((c,)), Obj((a,)))
            for delta in shape.elements():
                lhs = dext.act_left(eta.components[a], f.apply_ext(delta))
                rhs = dext.act_right(eta.components[c], g.apply_ext(delta))
                if lhs != rhs:
                    issues.append(
                        f"push/pull compatibility fails at class "
                        f"{delta.entries} over {c!r} by {a!r}"
                    )
                checked += 1

    return FunctorReport(checked, 0, tuple(issues))


def _isomorphic(cat, x: Obj, y: Obj, tries: int) -> bool:
    if x == y:
        return True
    for i, f in enumerate(cat.hom_shape(x, y).elements()):
        if i >= tries:
            return False
        if is_isomorphism(cat, f) is not None:
            return True
    return False


def is_exact_equivalence(functor: ExactFunctor, tries: int = 4096) -> bool:
    """Essentially surjective + fully faithful + phi a group isomorphism.

    Full faithfulness and the phi condition are decided on basic pairs
    (product decomposition extends them to all rank-capped pairs);
    essential surjectivity compares every rank-capped target object against
    the images of rank-capped source objects.
    """
    if not check_exact_functor(functor).ok:
        return False
    src, dst = functor.src, functor.dst
    for a in src.cat.basics:
        for b in src.cat.basics:
            hs = src.cat.hom_shape(Obj((a,)), Obj((b,)))
            hd = dst.cat.hom_shape(
                functor.apply_obj(Obj((a,))), functor.apply_obj(Obj((b,)))
            )
            image = Subgroup.from_gens(
                hd.group,
                [hd.pack(functor.apply_mor(m)) for m in _unit_mors(
                    src.cat, Obj((a,)), Obj((b,))
                )],
            )
            if image.size != hs.group.size or image.size != hd.group.size:
                return False
            es = src.ext.shape(Obj((b,)), Obj((a,)))
            ed = dst.ext.shape(
                functor.apply_obj(Obj((b,))), functor.apply_obj(Obj((a,)))
            )
            image = Subgroup.from_gens(
                ed.group,
                [ed.pack(functor.apply_ext(d)) for d in _unit_exts(
                    src.ext, Obj((b,)), Obj((a,))
                )],
            )
            if image.size != es.group.size or image.size != ed.group.size:
                return False
    images = {functor.apply_obj(x) for x in src.cat.objects()}
    for y in dst.cat.objects():
        if y in images:
            continue
        if not any(_isomorphic(dst.cat, img, y, tries) for img in images):
            return False
    return True

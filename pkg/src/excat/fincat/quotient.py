"""Additive quotients by the ideal of maps factoring through a subcategory.

Killing a full additive subcategory N means quotienting every hom group by
the subgroup [N](X, Y) of morphisms that factor through an object of N. On a
presentation this is computed pairwise on basics: [N](a, b) is generated by
the composites g∘h with h: a -> n, g: n -> b running over hom generators and
n over the members of N (single basics suffice, since a factorization through
a sum splits into a sum of factorizations through its parts).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .groups import FinAb, QuotientMap, Subgroup, quotient_group, solve_system
from .presentation import CategoryPresentation, Mor, Obj, Subcat


class Factorization(NamedTuple):
    """A witness ``f = outward ∘ inward`` through ``via`` (an object of N)."""

    via: Obj
    inward: Mor
    outward: Mor


def _ideal_products(
    cat: CategoryPresentation, src: Obj, dst: Obj, killed: Subcat
) -> list[tuple[Mor, Mor, str]]:
    """All generator-level composites src -> n -> dst with n a killed basic."""
    out = []
    for n in sorted(killed.members):
        nobj = Obj((n,))
        in_shape = cat.hom_shape(src, nobj)
        out_shape = cat.hom_shape(nobj, dst)
        for hi in range(in_shape.group.rank):
            h = in_shape.unpack(
                tuple(1 if k == hi else 0 for k in range(in_shape.group.rank))
            )
            for gi in range(out_shape.group.rank):
                g = out_shape.unpack(
                    tuple(1 if k == gi else 0 for k in range(out_shape.group.rank))
                )
                out.append((g, h, n))
    return out


def ideal_subgroup(
    cat: CategoryPresentation, src: Obj, dst: Obj, killed: Subcat
) -> Subgroup:
    shape = cat.hom_shape(src, dst)
    gens = [
        shape.pack(cat.compose(g, h)) for g, h, _ in _ideal_products(cat, src, dst, killed)
    ]
    return Subgroup.from_gens(shape.group, gens)


def factors_through(
    cat: CategoryPresentation, f: Mor, killed: Subcat
) -> Factorization | None:
    """Express f as a composite through an object of the killed subcategory.

    Solves ``f = sum(c_p * (g_p ∘ h_p))`` over the generator-level products
    and assembles one summand per product actually used. The witness object
    is as large as the number of used products; it is not rank-capped.
    """
    products = _ideal_products(cat, f.src, f.dst, killed)
    shape = cat.hom_shape(f.src, f.dst)
    target = shape.pack(f)
    if not products:
        return None if any(target) else Factorization(Obj(()), cat.zero_mor(f.src, Obj(())), cat.zero_mor(Obj(()), f.dst))
    flat_products = [shape.pack(cat.compose(g, h)) for g, h, _ in products]
    orders = shape.group.orders

    def residual(coeffs):
        acc = [0] * len(orders)
        for c, vec in zip(coeffs, flat_products):
            for k, v in enumerate(vec):
                acc[k] += c * v
        diff = tuple(a - t for a, t in zip(acc, target))
        return [(shape.group.reduce(diff), orders)]

    unknown_orders = tuple(shape.group.size for _ in products)
    sols = solve_system(unknown_orders, residual)
    if sols is None:
        return None
    coeffs = next(iter(sols))
    used = [(c, g, h, n) for c, (g, h, n) in zip(coeffs, products) if c]
    if not used:
        # f is zero; factor through the zero object.
        return Factorization(
            Obj(()), cat.zero_mor(f.src, Obj(())), cat.zero_mor(Obj(()), f.dst)
        )
    via = Obj(tuple(sorted(n for _, _, _, n in used)))
    order = sorted(range(len(used)), key=lambda i: used[i][3])
    in_rows = []
    out_cols = []
    for slot in order:
        c, g, h, _ = used[slot]
        scaled = [
            tuple(cat.hom_basic(bj, h.dst.parts[0]).smul(c, h.entries[0][j]) for j, bj in enumerate(f.src.parts))
        ]
        in_rows.append(scaled[0])
        out_cols.append(tuple(g.entries[i][0] for i in range(f.dst.rank)))
    inward = Mor(f.src, via, tuple(in_rows))
    outward = Mor(
        via,
        f.dst,
        tuple(tuple(out_cols[j][i] for j in range(len(used))) for i in range(f.dst.rank)),
    )
    assert cat.mor_eq(cat.compose(outward, inward), f)
    return Factorization(via, inward, outward)


class QuotientPresentation(CategoryPresentation):
    """The quotient category C/[N], itself a full presentation.

    Keeps the projection/lift data so that callers can move morphisms between
    the base category and the quotient. Objects are unchanged; a basic in N
    merely becomes isomorphic to zero (its identity is killed).
    """

    def __init__(self, base, killed, homs, gen_names, compose, identities, maps):
        self.base = base
        self.killed = killed
        self._maps = maps
        super().__init__(
            base.basics,
            homs,
            gen_names,
            compose,
            identities,
            rank_cap=base.rank_cap,
            name=f"{base.name}/[{'+'.join(sorted(killed.members))}]" if base.name else "",
        )

    def proj_mor(self, f: Mor) -> Mor:
        rows = []
        for i, bi in enumerate(f.dst.parts):
            row = []
            for j, bj in enumerate(f.src.parts):
                qmap = self._maps.get((bj, bi))
                # pairs with trivial hom groups carry no quotient data
                row.append(f.entries[i][j] if qmap is None else qmap.proj(f.entries[i][j]))
            rows.append(tuple(row))
        return Mor(f.src, f.dst, tuple(rows))

    def lift_mor(self, f: Mor) -> Mor:
        """Some base-category representative of a quotient morphism."""
        rows = []
        for i, bi in enumerate(f.dst.parts):
            row = []
            for j, bj in enumerate(f.src.parts):
                qmap = self._maps.get((bj, bi))
                row.append(f.entries[i][j] if qmap is None else qmap.lift(f.entries[i][j]))
            rows.append(tuple(row))
        return Mor(f.src, f.dst, tuple(rows))


def ideal_quotient(cat: CategoryPresentation, killed: Subcat) -> QuotientPresentation:
    """The additive quotient of ``cat`` by the ideal of the subcategory."""
    unknown = killed.members - set(cat.basics)
    if unknown:
        raise ValueError(f"killed members {sorted(unknown)} are not basics")
    maps: dict[tuple[str, str], QuotientMap] = {}
    homs: dict[tuple[str, str], FinAb] = {}
    gen_names: dict[tuple[str, str], tuple[str, ...]] = {}
    for a in cat.basics:
        for b in cat.basics:
            base_group = cat.hom_basic(a, b)
            if base_group.rank == 0:
                continue
            sub = ideal_subgroup(cat, Obj((a,)), Obj((b,)), killed)
            qmap = quotient_group(base_group, sub)
            maps[(a, b)] = qmap
            homs[(a, b)] = qmap.group
            identity_proj = all(
                qmap.proj(tuple(1 if k == i else 0 for k in range(base_group.rank)))
                == tuple(1 if k == i else 0 for k in range(qmap.group.rank))
                for i in range(base_group.rank)
            ) and qmap.group.orders == base_group.orders
            if identity_proj:
                gen_names[(a, b)] = cat.gen_names[(a, b)]
            else:
                gen_names[(a, b)] = tuple(
                    f"q_{a}_{b}_{i}" for i in range(qmap.group.rank)
                )
    compose: dict[tuple[str, str, str], tuple[tuple, ...]] = {}
    for a in cat.basics:
        for b in cat.basics:
            gab = homs.get((a, b))
            if gab is None or gab.rank == 0:
                continue
            for c in cat.basics:
                gbc = homs.get((b, c))
                gac = homs.get((a, c))
                if gbc is None or gbc.rank == 0:
                    continue
                table = []
                for j in range(gbc.rank):
                    gj = maps[(b, c)].lift(
                        tuple(1 if k == j else 0 for k in range(gbc.rank))
                    )
                    row = []
                    for i in range(gab.rank):
                        fi = maps[(a, b)].lift(
                            tuple(1 if k == i else 0 for k in range(gab.rank))
                        )
                        comp = cat.compose_basic(a, b, c, gj, fi)
                        row.append(maps[(a, c)].proj(comp) if (a, c) in maps else ())
                    table.append(tuple(row))
                compose[(a, b, c)] = tuple(table)
    identities = {}
    for basic in cat.basics:
        if (basic, basic) in maps:
            identities[basic] = maps[(basic, basic)].proj(cat.identity_basic(basic))
        elif cat.hom_basic(basic, basic).rank == 0:
            identities[basic] = ()
    return QuotientPresentation(cat, killed, homs, gen_names, compose, identities, maps)

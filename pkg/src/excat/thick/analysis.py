"""Leg classes attached to an additively closed family of basic objects.

Pick a set ``N`` of basic objects, closed in the senses checked by
:func:`is_thick`. Four morphism classes then organize everything this
package does with ``N``:

- ``L``: inflations whose cone lies in ``N``;
- ``R``: deflations whose cocone lies in ``N``;
- ``S_N``: all finite composites of members of ``L ∪ R``;
- ``M_inf`` / ``M_def``: composites ``t∘x∘s`` with ``s, t ∈ S_N`` and
  ``x`` an inflation (resp. a deflation).

Everything is enumerated inside an explicit rank bound, so the classes
here are honest finite approximations: a membership verdict of "no" is
conclusive only when the certificate search was not truncated by the
rank cap. The same convention as in :mod:`..extri.axioms` applies —
absence of a stored certificate is reported as cap-limited, never as a
refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..extri.axioms import CheckScope, _Checker
from ..extri.structure import Ext, ExtriStructure
from ..fincat import (
    Mor,
    Obj,
    Subcat,
    enumerate_homs,
    is_isomorphism,
    retraction_of,
)


class NotThickError(ValueError):
    """The chosen subcategory fails one of the closure requirements."""


class NoWitnessWithinCapError(ValueError):
    """A demanded diagram witness was not found inside the rank cap."""


# -- morphism classes -------------------------------------------------------------


@dataclass(frozen=True)
class MorphismClass:
    """A finite, explicitly enumerated set of morphisms.

    ``truncated`` counts membership tests whose certificate search hit
    the rank cap; when it is zero the set is exact over its universe.
    """

    name: str
    members: frozenset[Mor]
    truncated: int = 0

    def __contains__(self, f: Mor) -> bool:
        return f in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Mor]:
        return iter(sorted(self.members))

    def between(self, src: Obj, dst: Obj) -> list[Mor]:
        return sorted(f for f in self.members if f.src == src and f.dst == dst)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"MorphismClass({self.name}, {len(self.members)} members)"


@dataclass(frozen=True)
class LRClasses:
    """The leg classes of a thick subcategory, enumerated over a universe.

    The universe is every morphism between objects of rank at most
    ``universe_rank``; ``S_N`` is the fixed point of composition inside
    that universe, so composites that only factor through larger
    intermediate objects may be missing. Searches that need those (the
    factorization lemmas) re-run their own certificate walks instead of
    trusting ``S_N`` membership alone.
    """

    subcat: Subcat
    L: MorphismClass
    R: MorphismClass
    S_N: MorphismClass
    M_inf: MorphismClass
    M_def: MorphismClass
    universe_rank: int
    notes: tuple[str, ...] = ()

    def lines(self) -> list[str]:
        out = [
            f"universe: morphisms between objects of rank <= {self.universe_rank}"
        ]
        for cls in (self.L, self.R, self.S_N, self.M_inf, self.M_def):
            line = f"{cls.name}: {len(cls)} members"
            if cls.truncated:
                line += f" ({cls.truncated} membership tests cap-limited)"
            out.append(line)
        out.extend(self.notes)
        return out


# -- thickness --------------------------------------------------------------------


@dataclass
class ThickReport:
    """Closure verdicts for a basics-spanned additive subcategory."""

    subcat: Subcat
    is_additive_closed: bool
    is_summand_closed: bool
    two_out_of_three: bool
    counterexamples: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def is_thick(self) -> bool:
        return (
            self.is_additive_closed
            and self.is_summand_closed
            and self.two_out_of_three
        )

    def lines(self) -> list[str]:
        out = [
            f"additive closure: {'ok' if self.is_additive_closed else 'violated'}",
            f"summand closure: {'ok' if self.is_summand_closed else 'violated'}",
            f"2-out-of-3: {'ok' if self.two_out_of_three else 'violated'}",
            f"thick: {'yes' if self.is_thick else 'no'}",
        ]
        out.extend(f"counterexample: {c}" for c in self.counterexamples)
        out.extend(self.notes)
        return out


def is_thick(
    structure: ExtriStructure, subcat: Subcat, summand_rank: int = 2
) -> ThickReport:
    """Check the closure properties that make ``subcat`` thick.

    Additive closure under direct sums holds by construction for a
    basics-spanned subcategory, so the checks with content are: no
    outside basic is isomorphic to a member (closure under isomorphism),
    no outside basic is a split-monomorphic summand of a member object
    of rank up to ``summand_rank``, and the 2-out-of-3 property over
    every stored conflation. Summands arising from idempotents that do
    not split along the basics are invisible to this test; the report
    notes the discipline.
    """
    cat = structure.cat
    unknown = subcat.members - set(cat.basics)
    if unknown:
        raise ValueError(f"subcategory members {sorted(unknown)} are not basics")

    counterexamples: list[str] = []
    iso_closed = True
    summand_closed = True
    outside = [b for b in cat.basics if b not in subcat.members]
    for b in outside:
        bobj = Obj((b,))
        for nobj in subcat.objects(summand_rank):
            if nobj.is_zero:
                continue
            for f in enumerate_homs(cat, bobj, nobj):
                if retraction_of(cat, f) is None:
                    continue
                summand_closed = False
                if is_isomorphism(cat, f) is not None:
                    iso_closed = False
                    counterexamples.append(
                        f"{bobj!r} is isomorphic to {nobj!r} but not a member"
                    )
                else:
                    counterexamples.append(
                        f"{bobj!r} splits off {nobj!r} but is not a member"
                    )
                break
            else:
                continue
            break

    two_out_of_three = True
    for d, x, y in structure.real.conflations():
        flags = (
            subcat.contains(d.by),
            subcat.contains(x.dst),
            subcat.contains(d.over),
        )
        if sum(flags) == 2:
            two_out_of_three = False
            counterexamples.append(
                f"conflation {d.by!r} -> {x.dst!r} -> {d.over!r} has exactly "
                "two of three ends inside"
            )

    return ThickReport(
        subcat=subcat,
        is_additive_closed=iso_closed,
        is_summand_closed=summand_closed,
        two_out_of_three=two_out_of_three,
        counterexamples=tuple(counterexamples),
        notes=(
            "direct-sum closure holds by construction for basics-spanned "
            "subcategories",
            f"summand closure tested against split monomorphisms into member "
            f"objects of rank <= {summand_rank}; idempotent splittings outside "
            "the basics are not visible",
            "2-out-of-3 quantified over every stored conflation",
        ),
    )


# -- shared certificate caches -----------------------------------------------------


class _Analyzer:
    """Memoized leg-class membership for one (structure, subcat) pair.

    Wraps the condition checker's conflation-leg search and caches the
    verdicts, since the class computations and the lemma suite probe the
    same morphisms over and over. Cone and cocone objects are unique up
    to isomorphism — hence unique as objects here, where isomorphic
    objects coincide — so the first certificate found decides membership.
    """

    def __init__(
        self,
        structure: ExtriStructure,
        subcat: Subcat,
        scope: CheckScope | None = None,
    ):
        self.structure = structure
        self.subcat = subcat
        self.scope = scope or CheckScope()
        self.checker = _Checker(structure, self.scope)
        self.cat = structure.cat
        self.ext = structure.ext
        self.real = structure.real
        self._leg: dict[tuple[str, Mor], tuple[bool, bool, Obj | None]] = {}
        self._aut: dict[Obj, list[Mor]] = {}
        self._qp = None

    def _leg_verdict(self, f: Mor, side: str) -> tuple[bool, bool, Obj | None]:
        key = (side, f)
        got = self._leg.get(key)
        if got is None:
            cands, truncated = self.checker._leg_candidates(f, side, first_only=True)
            if cands:
                d = cands[0][0]
                end = d.over if side == "first" else d.by
                got = (True, truncated, end)
            else:
                end = self._block_leg(f, side)
                got = (False, truncated, None) if end is None else (True, False, end)
            # feed the checker's own cache so admissibility queries reuse this
            self.checker._status[(side, f)] = (got[0], got[1])
            self._leg[key] = got
        return got

    def _block_leg(self, f: Mor, side: str) -> Obj | None:
        """Far end of ``f`` certified blockwise, or None.

        Conflations add componentwise, so a block-diagonal sum of two
        certified legs is again a leg whose far end is the sum of the
        blocks'. When some bipartition of the source and target parts
        kills the off-diagonal blocks and both diagonal blocks certify,
        that decides ``f`` even though the combined certificate pair
        would overflow the storage cap.
        """
        m, n = f.src.rank, f.dst.rank
        if m + n < 3:
            return None
        for umask in range(2**m):
            for wmask in range(2**n):
                picked = bin(umask).count("1") + bin(wmask).count("1")
                if picked == 0 or picked == m + n:
                    continue
                if not _off_blocks_zero(f, umask, wmask):
                    continue
                ok1, _, end1 = self._leg_verdict(_block(f, umask, wmask), side)
                if not ok1:
                    continue
                ok2, _, end2 = self._leg_verdict(
                    _block(f, umask ^ (2**m - 1), wmask ^ (2**n - 1)), side
                )
                if ok2:
                    return Obj(tuple(sorted(end1.parts + end2.parts)))
        return None

    def in_L(self, f: Mor) -> tuple[bool, bool]:
        """(membership, truncated) for the inflations-with-cone-inside class.

        A found certificate decides membership either way — the cone is
        unique up to isomorphism, hence unique as an object here — so the
        truncation flag only survives when no certificate turned up.
        """
        found, truncated, cone = self._leg_verdict(f, "first")
        if found:
            return (self.subcat.contains(cone), False)
        return (False, truncated)

    def in_R(self, f: Mor) -> tuple[bool, bool]:
        found, truncated, cocone = self._leg_verdict(f, "second")
        if found:
            return (self.subcat.contains(cocone), False)
        return (False, truncated)

    def is_inflation(self, f: Mor) -> tuple[bool, bool]:
        found, truncated, _ = self._leg_verdict(f, "first")
        return found, truncated

    def is_deflation(self, f: Mor) -> tuple[bool, bool]:
        found, truncated, _ = self._leg_verdict(f, "second")
        return found, truncated

    def automorphisms(self, x: Obj) -> list[Mor]:
        """All invertible endomorphisms of x, the identity first."""
        auts = self._aut.get(x)
        if auts is None:
            ident = self.cat.identity(x)
            auts = [ident]
            for f in enumerate_homs(self.cat, x, x):
                if f != ident and is_isomorphism(self.cat, f) is not None:
                    auts.append(f)
            self._aut[x] = auts
        return auts

    def quotient(self):
        """The additive quotient killing the subcategory's ideal (lazy)."""
        if self._qp is None:
            from ..fincat import ideal_quotient

            self._qp = ideal_quotient(self.cat, self.subcat)
        return self._qp

    def stored_with_by(self, by: Obj, end_in_subcat: bool) -> list[tuple[Ext, Mor, Mor]]:
        """Stored conflations whose first leg starts at ``by``.

        With ``end_in_subcat`` the far end is restricted to member
        objects — the candidates certifying membership in ``L``.
        """
        out = []
        for over, b in sorted(self.real.table):
            if b != by:
                continue
            if end_in_subcat and not self.subcat.contains(over):
                continue
            for d in self.ext.elements(over, b):
                x, y = self.real.realize(d)
                out.append((d, x, y))
        return out

    def stored_with_middle(self, mid: Obj, by_in_subcat: bool) -> list[tuple[Ext, Mor, Mor]]:
        """Stored conflations whose realization passes through ``mid``."""
        out = []
        for over, b in sorted(self.real.table):
            if by_in_subcat and not self.subcat.contains(b):
                continue
            for d in self.ext.elements(over, b):
                x, y = self.real.realize(d)
                if x.dst == mid:
                    out.append((d, x, y))
        return out


def _off_blocks_zero(f: Mor, umask: int, wmask: int) -> bool:
    for i in range(f.dst.rank):
        for j in range(f.src.rank):
            if ((wmask >> i) & 1) != ((umask >> j) & 1) and any(f.entries[i][j]):
                return False
    return True


def _block(f: Mor, umask: int, wmask: int) -> Mor:
    cols = [j for j in range(f.src.rank) if (umask >> j) & 1]
    rows = [i for i in range(f.dst.rank) if (wmask >> i) & 1]
    return Mor(
        Obj(tuple(f.src.parts[j] for j in cols)),
        Obj(tuple(f.dst.parts[i] for i in rows)),
        tuple(tuple(f.entries[i][j] for j in cols) for i in rows),
    )


def _universe(cat, rank: int) -> Iterator[Mor]:
    objs = list(cat.objects(rank))
    for x in objs:
        for y in objs:
            yield from enumerate_homs(cat, x, y)


def _compose_closure(cat, seed: set[Mor]) -> set[Mor]:
    """Close a set of morphisms under composition, bucketed by endpoint.

    Worklist discipline: when a member is popped, everything inserted
    before it is already indexed, so each composable pair is formed when
    the later of its two factors comes up.
    """
    closed = set(seed)
    by_src: dict[Obj, list[Mor]] = {}
    by_dst: dict[Obj, list[Mor]] = {}
    for f in closed:
        by_src.setdefault(f.src, []).append(f)
        by_dst.setdefault(f.dst, []).append(f)
    queue = list(closed)
    while queue:
        h = queue.pop()
        fresh = []
        for g in by_src.get(h.dst, ()):
            fresh.append(cat.compose(g, h))
        for f in by_dst.get(h.src, ()):
            fresh.append(cat.compose(h, f))
        for c in fresh:
            if c not in closed:
                closed.add(c)
                by_src.setdefault(c.src, []).append(c)
                by_dst.setdefault(c.dst, []).append(c)
                queue.append(c)
    return closed


def _sandwich(cat, left: set[Mor], core: set[Mor], right: set[Mor]) -> set[Mor]:
    """All composites l∘x∘r with the three factors drawn from the given sets."""
    by_src: dict[Obj, list[Mor]] = {}
    for x in core:
        by_src.setdefault(x.src, []).append(x)
    first: set[Mor] = set()
    for r in right:
        for x in by_src.get(r.dst, ()):
            first.add(cat.compose(x, r))
    left_by_src: dict[Obj, list[Mor]] = {}
    for l in left:
        left_by_src.setdefault(l.src, []).append(l)
    out: set[Mor] = set()
    for m in first:
        for l in left_by_src.get(m.dst, ()):
            out.add(cat.compose(l, m))
    return out


def classes_LR(
    structure: ExtriStructure,
    subcat: Subcat,
    universe_rank: int = 2,
    scope: CheckScope | None = None,
    analyzer: "_Analyzer | None" = None,
) -> LRClasses:
    """Enumerate L, R, S_N, M_inf and M_def over a bounded universe.

    Raises NotThickError unless :func:`is_thick` passes. Membership in L
    and R is decided by the stored-conflation certificate search; S_N is
    the composition fixed point of their union; M_inf and M_def sandwich
    arbitrary inflations (deflations) between members of S_N.
    """
    report = is_thick(structure, subcat)
    if not report.is_thick:
        raise NotThickError("; ".join(report.counterexamples) or "not thick")
    an = analyzer or _Analyzer(structure, subcat, scope)
    cat = an.cat

    l_members: set[Mor] = set()
    r_members: set[Mor] = set()
    inflations: set[Mor] = set()
    deflations: set[Mor] = set()
    l_trunc = r_trunc = 0
    for f in _universe(cat, universe_rank):
        inl, tl = an.in_L(f)
        inr, tr = an.in_R(f)
        if inl:
            l_members.add(f)
        elif tl:
            l_trunc += 1
        if inr:
            r_members.add(f)
        elif tr:
            r_trunc += 1
        if an.is_inflation(f)[0]:
            inflations.add(f)
        if an.is_deflation(f)[0]:
            deflations.add(f)

    s_members = _compose_closure(cat, l_members | r_members)
    m_inf = _sandwich(cat, s_members, inflations, s_members)
    m_def = _sandwich(cat, s_members, deflations, s_members)

    return LRClasses(
        subcat=subcat,
        L=MorphismClass("L", frozenset(l_members), l_trunc),
        R=MorphismClass("R", frozenset(r_members), r_trunc),
        S_N=MorphismClass("S_N", frozenset(s_members)),
        M_inf=MorphismClass("M_inf", frozenset(m_inf)),
        M_def=MorphismClass("M_def", frozenset(m_def)),
        universe_rank=universe_rank,
        notes=(
            "S_N closed under composition inside the universe; composites "
            "factoring only through larger objects are not represented",
        ),
    )

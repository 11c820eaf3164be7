"""Tests for presentations, searches, and ideal quotients (fincat layer).

The two presentations here are built by hand, independently of the shipped
generators, and the expected numbers come from tests/oracles.
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from excat.fincat import (
    CapError,
    CategoryPresentation,
    FinAb,
    Mor,
    Obj,
    PresentationError,
    SequenceEndpointError,
    Subcat,
    compose,
    direct_sum,
    enumerate_homs,
    enumerate_items,
    enumerate_objects,
    factors_through,
    ideal_quotient,
    injection,
    is_epi,
    is_isomorphism,
    is_mono,
    projection,
    retraction_of,
    section_of,
    seq_equivalent,
    sum_objects,
)

F2 = FinAb((2,))


def build_moda2() -> CategoryPresentation:
    return CategoryPresentation(
        basics=("P", "S1", "S2"),
        homs={
            ("S1", "S1"): F2,
            ("S2", "S2"): F2,
            ("P", "P"): F2,
            ("S2", "P"): F2,
            ("P", "S1"): F2,
        },
        gen_names={
            ("S1", "S1"): ("id1",),
            ("S2", "S2"): ("id2",),
            ("P", "P"): ("idP",),
            ("S2", "P"): ("incl",),
            ("P", "S1"): ("proj",),
        },
        compose={
            ("S1", "S1", "S1"): (((1,),),),
            ("S2", "S2", "S2"): (((1,),),),
            ("P", "P", "P"): (((1,),),),
            ("S2", "S2", "P"): (((1,),),),
            ("S2", "P", "P"): (((1,),),),
            ("P", "P", "S1"): (((1,),),),
            ("P", "S1", "S1"): (((1,),),),
            ("S2", "P", "S1"): (((0,),),),
        },
        identities={"S1": (1,), "S2": (1,), "P": (1,)},
        rank_cap=3,
        name="moda2-hand",
    )


def build_frob() -> CategoryPresentation:
    return CategoryPresentation(
        basics=("A", "k"),
        homs={
            ("k", "k"): F2,
            ("k", "A"): F2,
            ("A", "k"): F2,
            ("A", "A"): FinAb((2, 2)),
        },
        gen_names={
            ("k", "k"): ("e",),
            ("k", "A"): ("i",),
            ("A", "k"): ("p",),
            ("A", "A"): ("one", "x"),
        },
        compose={
            ("k", "k", "k"): (((1,),),),
            ("k", "k", "A"): (((1,),),),
            ("k", "A", "k"): (((0,),),),
            ("k", "A", "A"): (((1,),), ((0,),)),
            ("A", "k", "k"): (((1,),),),
            ("A", "k", "A"): (((0, 1),),),
            ("A", "A", "k"): (((1,), (0,)),),
            ("A", "A", "A"): (((1, 0), (0, 1)), ((0, 1), (0, 0))),
        },
        identities={"k": (1,), "A": (1, 0)},
        rank_cap=3,
        name="frob-hand",
    )


@pytest.fixture(scope="module")
def moda2():
    return build_moda2()


@pytest.fixture(scope="module")
def frob():
    return build_frob()


S1, S2, P = Obj.of("S1"), Obj.of("S2"), Obj.of("P")
K, A = Obj.of("k"), Obj.of("A")


# -- presentation validation -----------------------------------------------------


def test_rejects_broken_associativity():
    # n∘n = 0 in End(b) but the table claims n∘f = f, so (n∘n)∘f ≠ n∘(n∘f)
    with pytest.raises(PresentationError, match="associativity"):
        CategoryPresentation(
            basics=("a", "b"),
            homs={
                ("a", "a"): F2,
                ("a", "b"): F2,
                ("b", "b"): FinAb((2, 2)),
            },
            gen_names={("a", "a"): ("ida",), ("a", "b"): ("f",), ("b", "b"): ("one", "n")},
            compose={
                ("a", "a", "a"): (((1,),),),
                ("a", "a", "b"): (((1,),),),
                ("a", "b", "b"): (((1,),), ((1,),)),
                ("b", "b", "b"): (((1, 0), (0, 1)), ((0, 1), (0, 0))),
            },
            identities={"a": (1,), "b": (1, 0)},
        )


def test_rejects_missing_identity():
    with pytest.raises(PresentationError):
        CategoryPresentation(
            basics=("a",),
            homs={("a", "a"): F2},
            gen_names={("a", "a"): ("f",)},
            compose={("a", "a", "a"): (((1,),),)},
            identities={},
        )


def test_rejects_nonunital_identity():
    with pytest.raises(PresentationError, match="unit"):
        CategoryPresentation(
            basics=("a",),
            homs={("a", "a"): FinAb((2, 2))},
            gen_names={("a", "a"): ("one", "t")},
            compose={
                ("a", "a", "a"): (((1, 0), (0, 0)), ((0, 0), (0, 0))),
            },
            identities={"a": (1, 0)},
        )


# -- composition -----------------------------------------------------------------


def test_composite_through_P_vanishes(moda2):
    incl = Mor(S2, P, (((1,),),))
    proj = Mor(P, S1, (((1,),),))
    assert moda2.is_zero_mor(compose(moda2, proj, incl))


def test_block_composition_matches_manual(frob):
    ak = Obj.of("A", "k")
    f = frob.identity(ak)
    assert compose(frob, f, f) == f
    i = Mor(K, A, (((1,),),))
    p = Mor(A, K, (((1,),),))
    x = compose(frob, i, p)
    assert x.entries == (((0, 1),),)
    assert frob.is_zero_mor(compose(frob, x, x))


@given(st.data())
@settings(max_examples=40, derandomize=True, deadline=None)
def test_associativity_on_compounds(data):
    cat = build_frob()
    objs = [Obj.of("k"), Obj.of("A"), Obj.of("A", "k")]
    w, x, y, z = (data.draw(st.sampled_from(objs)) for _ in range(4))
    f = data.draw(st.sampled_from(list(enumerate_homs(cat, w, x))))
    g = data.draw(st.sampled_from(list(enumerate_homs(cat, x, y))))
    h = data.draw(st.sampled_from(list(enumerate_homs(cat, y, z))))
    assert compose(cat, h, compose(cat, g, f)) == compose(
        cat, compose(cat, h, g), f
    )


# -- isomorphism search ------------------------------------------------------------


def test_unitriangular_self_inverse(moda2):
    s11 = Obj.of("S1", "S1")
    f = Mor(s11, s11, (((1,), (1,)), ((0,), (1,))))
    assert is_isomorphism(moda2, f) == f


def test_non_iso_rejected(moda2):
    z = moda2.zero_mor(S1, S1)
    assert is_isomorphism(moda2, z) is None
    incl = Mor(S2, P, (((1,),),))
    assert is_isomorphism(moda2, incl) is None


def test_nilpotent_not_iso_but_unit_plus_nilpotent_is(frob):
    x = Mor(A, A, (((0, 1),),))
    assert is_isomorphism(frob, x) is None
    ux = Mor(A, A, (((1, 1),),))
    inv = is_isomorphism(frob, ux)
    assert inv == ux  # (1+x)² = 1 in F2[x]/x²


# -- sequence comparison -----------------------------------------------------------


def test_seq_equivalent_returns_least_witness(moda2):
    s11 = Obj.of("S1", "S1")
    x1 = Mor(S1, s11, (((1,),), ((0,),)))
    y1 = Mor(s11, S1, (((0,), (1,)),))
    x2 = Mor(S1, s11, (((1,),), ((1,),)))
    y2 = Mor(s11, S1, (((1,), (1,)),))
    b = seq_equivalent(moda2, (x1, y1), (x2, y2))
    assert b is not None
    assert b.entries == (((1,), (0,)), ((1,), (1,)))
    assert moda2.mor_eq(compose(moda2, b, x1), x2)
    assert moda2.mor_eq(compose(moda2, y2, b), y1)


def test_seq_equivalent_is_symmetric_here(moda2):
    s11 = Obj.of("S1", "S1")
    x1 = Mor(S1, s11, (((1,),), ((0,),)))
    y1 = Mor(s11, S1, (((0,), (1,)),))
    x2 = Mor(S1, s11, (((1,),), ((1,),)))
    y2 = Mor(s11, S1, (((1,), (1,)),))
    assert seq_equivalent(moda2, (x2, y2), (x1, y1)) is not None
    assert seq_equivalent(moda2, (x1, y1), (x1, y1)) is not None


def test_seq_equivalent_endpoint_mismatch(moda2):
    x = Mor(S1, Obj.of("S1", "S1"), (((1,),), ((0,),)))
    y = Mor(Obj.of("S1", "S1"), S1, (((0,), (1,)),))
    bad = Mor(P, S1, (((1,),),))
    with pytest.raises(SequenceEndpointError):
        seq_equivalent(moda2, (x, y), (bad, moda2.identity(S1)))


def test_seq_equivalent_fat_coset_uses_split_bridge(frob):
    a3 = Obj.of("A", "A", "A")
    z, pos_a, pos_c = sum_objects(a3, a3)
    ia = injection(frob, a3, z, pos_a)
    pc = projection(frob, z, a3, pos_c)
    b = seq_equivalent(frob, (ia, pc), (ia, pc))
    assert b is not None
    assert frob.mor_eq(compose(frob, b, ia), ia)
    assert frob.mor_eq(compose(frob, pc, b), pc)


# -- split structure -----------------------------------------------------------------


def test_injection_projection_identity(frob):
    z, pos, _ = sum_objects(A, K)
    i = injection(frob, A, z, pos)
    p = projection(frob, z, A, pos)
    assert compose(frob, p, i) == frob.identity(A)
    assert retraction_of(frob, i) is not None
    assert section_of(frob, p) is not None
    assert retraction_of(frob, frob.zero_mor(A, K)) is None


def test_direct_sum_blocks_and_cap(frob):
    i = Mor(K, A, (((1,),),))
    p = Mor(A, K, (((1,),),))
    s = direct_sum(frob, i, p)
    assert s.src == Obj.of("A", "k") and s.dst == Obj.of("A", "k")
    # A-part of target comes from i, k-part from p
    assert s.entries[0][1] == (1,) and s.entries[1][0] == (1,)
    assert s.entries[0][0] == (0, 0) and s.entries[1][1] == (0,)
    with pytest.raises(CapError):
        direct_sum(frob, frob.identity(Obj.of("A", "A")), frob.identity(Obj.of("k", "k")))


# -- cancellation -------------------------------------------------------------------


def test_mono_epi_classification(moda2):
    incl = Mor(S2, P, (((1,),),))
    proj = Mor(P, S1, (((1,),),))
    assert is_mono(moda2, incl) and not is_epi(moda2, incl)
    assert is_epi(moda2, proj) and not is_mono(moda2, proj)
    assert is_mono(moda2, moda2.identity(P)) and is_epi(moda2, moda2.identity(P))


def test_nilpotent_neither_mono_nor_epi(frob):
    x = Mor(A, A, (((0, 1),),))
    assert not is_mono(frob, x) and not is_epi(frob, x)


# -- enumeration --------------------------------------------------------------------


def test_enumerate_objects_ordering(frob):
    objs = list(enumerate_objects(frob, 2))
    assert objs == [
        Obj(()),
        Obj.of("A"),
        Obj.of("k"),
        Obj.of("A", "A"),
        Obj.of("A", "k"),
        Obj.of("k", "k"),
    ]
    with pytest.raises(CapError):
        enumerate_objects(frob, 99)


def test_enumerate_homs_count(frob):
    kk = Obj.of("k", "k")
    assert len(list(enumerate_homs(frob, kk, K))) == 4  # |F2|²
    assert len(list(enumerate_items(frob, "objects", 1))) == 3


# -- ideal quotients ----------------------------------------------------------------


def test_stable_quotient_hom_sizes(frob):
    st_ = ideal_quotient(frob, Subcat.of("A"))
    assert st_.hom_basic("k", "k").size == 2
    assert st_.hom_basic("k", "A").size == 1
    assert st_.hom_basic("A", "k").size == 1
    assert st_.hom_basic("A", "A").size == 1
    assert st_.is_zero_mor(st_.identity(A))
    assert not st_.is_zero_mor(st_.identity(K))
    # generator names survive when nothing is killed in the hom
    assert st_.gen_names[("k", "k")] == ("e",)


def test_quotient_projection_functorial(frob):
    st_ = ideal_quotient(frob, Subcat.of("A"))
    objs = [K, A, Obj.of("A", "k")]
    for src, mid, dst in itertools.product(objs, repeat=3):
        for f in enumerate_homs(frob, src, mid):
            for g in enumerate_homs(frob, mid, dst):
                lhs = st_.proj_mor(frob.compose(g, f))
                rhs = st_.compose(st_.proj_mor(g), st_.proj_mor(f))
                assert st_.mor_eq(lhs, rhs)


def test_quotient_lift_sections_projection(frob):
    st_ = ideal_quotient(frob, Subcat.of("A"))
    for f in enumerate_homs(st_, K, K):
        assert st_.mor_eq(st_.proj_mor(st_.lift_mor(f)), f)


def test_factors_through_witness(frob):
    x = Mor(A, A, (((0, 1),),))
    w = factors_through(frob, x, Subcat.of("k"))
    assert w is not None
    assert w.via == K
    assert frob.mor_eq(compose(frob, w.outward, w.inward), x)
    assert factors_through(frob, frob.identity(A), Subcat.of("k")) is None


def test_factors_through_zero_and_identity_routes(frob):
    z = frob.zero_mor(K, K)
    w = factors_through(frob, z, Subcat.of("A"))
    assert w is not None and w.via.is_zero
    ida = frob.identity(A)
    w2 = factors_through(frob, ida, Subcat.of("A"))
    assert w2 is not None and w2.via == A


def test_serre_style_quotient_of_quiver(moda2):
    q = ideal_quotient(moda2, Subcat.of("S2"))
    assert q.hom_basic("P", "P").size == 2
    assert q.hom_basic("P", "S1").size == 2
    assert q.hom_basic("S2", "P").size == 1
    assert q.hom_basic("S2", "S2").size == 1

"""Extension tables, actions, realizations, and the condition checker."""

import pytest

from excat.extri import (
    CheckScope,
    ExtActionError,
    ExtriStructure,
    NotInflationError,
    Realization,
    Verdict,
    check_axioms,
    classify_morphism,
    cocone,
    cone,
    ext_act,
    op_ext,
    op_mor,
    opposite_structure,
)
from excat.fincat import ZERO_OBJ, Obj, seq_equivalent

K = Obj.of("k")
KK = Obj.of("k", "k")


# -- action laws ------------------------------------------------------------------


def test_identity_acts_trivially(moda2):
    s1, s2 = Obj.of("S1"), Obj.of("S2")
    for d in moda2.ext.elements(s1, s2):
        assert ext_act(moda2, moda2.cat.identity(s2), d, "left") == d
        assert ext_act(moda2, moda2.cat.identity(s1), d, "right") == d


def test_zero_morphism_kills_classes(moda2):
    s1, s2 = Obj.of("S1"), Obj.of("S2")
    push_zero = moda2.cat.zero_mor(s2, s2)
    pull_zero = moda2.cat.zero_mor(s1, s1)
    for d in moda2.ext.elements(s1, s2):
        assert ext_act(moda2, push_zero, d, "left").is_zero
        assert ext_act(moda2, pull_zero, d, "right").is_zero


def test_action_endpoint_mismatch_raises(moda2):
    s1, s2 = Obj.of("S1"), Obj.of("S2")
    d = moda2.ext.zero(s1, s2)
    with pytest.raises(ExtActionError):
        ext_act(moda2, moda2.cat.identity(s1), d, "left")
    with pytest.raises(ExtActionError):
        ext_act(moda2, d=d, m=moda2.cat.identity(s2), side="sideways")


def test_actions_commute(moda2):
    # pulling back and pushing forward are independent coordinates
    s1, s2, p = Obj.of("S1"), Obj.of("S2"), Obj.of("P")
    pull = moda2.cat.hom_shape(p, s1).unpack((1,))
    push = moda2.cat.hom_shape(s2, p).unpack((1,))
    for d in moda2.ext.elements(s1, s2):
        one_way = moda2.ext.act_right(pull, moda2.ext.act_left(push, d))
        other = moda2.ext.act_left(push, moda2.ext.act_right(pull, d))
        assert one_way == other


# -- realizations ------------------------------------------------------------------


def test_zero_class_realizes_split(vec2):
    x, y = vec2.real.realize(vec2.ext.zero(K, K))
    cat = vec2.cat
    assert x.src == K and y.dst == K and x.dst == KK
    assert cat.mor_eq(cat.compose(y, x), cat.zero_mor(K, K))
    # both legs admit one-sided inverses, as a split sequence must
    split = vec2.real.realize(vec2.ext.zero(K, K))
    assert seq_equivalent(cat, (x, y), split) is not None


def test_nonsplit_class_has_no_split_comparison(moda2):
    s1, s2 = Obj.of("S1"), Obj.of("S2")
    shape = moda2.ext.shape(s1, s2)
    x, y = moda2.real.realize(shape.unpack((1,)))
    assert x.dst == Obj.of("P")  # the middle collapses to the projective
    x0, y0 = moda2.real.realize(moda2.ext.zero(s1, s2))
    assert x0.dst != x.dst  # middles already differ, no witness possible


def test_conflations_iterates_stored_pairs(vec2):
    seen = set()
    for d, x, y in vec2.real.conflations():
        assert vec2.real.matches(d, x, y)
        seen.add((d.over, d.by))
    assert (K, K) in seen
    assert (ZERO_OBJ, ZERO_OBJ) in seen


# -- the checker on healthy and corrupted structures -------------------------------


def test_classify_identity(vec2):
    got = classify_morphism(vec2, vec2.cat.identity(K))
    assert got.inflation and got.deflation and got.admissible
    assert not got.cap_limited
    assert got.cone == ZERO_OBJ
    assert got.cocone == ZERO_OBJ


def test_zero_to_zero_object_is_not_split_inflation(vec2):
    # with only split conflations, k -> 0 admits no certificate
    collapse = vec2.cat.zero_mor(K, ZERO_OBJ)
    with pytest.raises(NotInflationError):
        cone(vec2, collapse)
    got = classify_morphism(vec2, collapse)
    assert not got.inflation and got.deflation
    assert got.cocone == K


def test_every_morphism_certifies_both_ways_in_stmod2(stmod2):
    cat = stmod2.cat
    for f in (cat.identity(K), cat.zero_mor(K, K), cat.zero_mor(K, ZERO_OBJ)):
        got = classify_morphism(stmod2, f)
        assert got.inflation, f
        assert got.deflation, f


def test_cone_of_collapse_is_shifted_object(stmod2):
    assert cone(stmod2, stmod2.cat.zero_mor(K, ZERO_OBJ)) == K
    assert cocone(stmod2, stmod2.cat.zero_mor(ZERO_OBJ, K)) == K


def test_cone_of_zero_endomorphism(stmod2):
    # 0: k -> k sits in a conflation k -> k(+)k -> k on either side
    assert cone(stmod2, stmod2.cat.zero_mor(K, K)) == KK


def test_corrupted_realization_fails_probe_exactness(stmod2):
    shape = stmod2.ext.shape(K, K)
    bad_key = shape.unpack((1,)).entries
    table = {pair: dict(rows) for pair, rows in stmod2.real.table.items()}
    # hand the nonzero self-extension the split conflation: every probe
    # sequence through it now has too large an image to stay exact
    table[(K, K)][bad_key] = table[(K, K)][shape.zero().entries]
    broken = ExtriStructure(
        stmod2.cat,
        stmod2.ext,
        Realization(stmod2.cat, stmod2.ext, table),
    )
    rep = check_axioms(broken)
    r = rep["(C1)"]
    assert r.verdict is Verdict.FAILED
    assert r.counterexample
    assert rep.failures


def test_scope_zero_checks_nothing_but_passes(vec2):
    rep = check_axioms(
        vec2, CheckScope(pair_rank_sum=0, aux_rank=0, comp_rank_sum=0, wic_rank=0)
    )
    assert not rep.failures


# -- formal reversal ----------------------------------------------------------------


def test_op_mor_is_entrywise_transpose(moda2):
    s2, p = Obj.of("S2"), Obj.of("P")
    f = moda2.cat.hom_shape(s2, p).unpack((1,))
    g = op_mor(f)
    assert (g.src, g.dst) == (p, s2)
    assert op_mor(g) == f


def test_op_ext_round_trip(moda2):
    s1, s2 = Obj.of("S1"), Obj.of("S2")
    for d in moda2.ext.elements(s1, s2):
        back = op_ext(op_ext(d))
        assert back == d


def test_opposite_structure_is_an_involution(moda2):
    twice = opposite_structure(opposite_structure(moda2))
    assert twice.cat.basics == moda2.cat.basics
    assert twice.real.table == moda2.real.table
    for (c, a), grp in moda2.ext._groups.items():
        assert twice.ext._groups[(c, a)].orders == grp.orders


def test_opposite_structure_swaps_verdict_columns(vec2):
    rep = check_axioms(opposite_structure(vec2))
    assert not rep.failures
    assert rep.level == "extriangulated"

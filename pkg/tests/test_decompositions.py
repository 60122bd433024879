import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from leftorders.decompositions import (
    Poset,
    SliceTarget,
    check_layering,
    decomposition_from_json,
    from_partition,
    from_preorder,
    j_decomposition,
    jstar_decomposition,
    layered_preorders,
    semilattice_form,
    slices,
    star_ideal_check,
    trivial_decomposition,
)
from leftorders.errors import EmptyClass, Incompatible, NotAPartition, SliceMismatch
from leftorders.fixtures import b2, clifford4, clifford4_decomposition, semilattice2, z2
from leftorders.oracle import canonical_form
from leftorders.orders import Embedding, check_left_order
from leftorders.relations import Relation, green_equivalences, green_preorders, jstar_preorder
from leftorders.semigroup import validate

from conftest import semigroups_upto

some_semigroup = st.sampled_from(semigroups_upto(3))


def self_targets(d):
    return [SliceTarget(sl.semigroup, tuple(sl.semigroup.elements)) for sl in slices(d)]


def test_from_partition_examples():
    for S in (b2(), z2()):
        assert trivial_decomposition(S).poset.size == 1
    d = from_partition(semilattice2(), [[0], [1]], Poset.chain(2))
    assert d.class_of == (0, 1)
    with pytest.raises(Incompatible) as exc:
        from_partition(z2(), [[0], [1]], Poset.antichain(2))
    a, b, ab = exc.value.witness
    assert z2().mul(a, b) == ab
    with pytest.raises(NotAPartition):
        from_partition(z2(), [[0], [0, 1]], Poset.chain(2))
    with pytest.raises((EmptyClass, NotAPartition)):
        from_partition(z2(), [[0, 1], []], Poset.chain(2))


def test_from_preorder_examples():
    S = b2()
    assert from_preorder(S, Relation.universal(5)).poset.size == 1
    dj = j_decomposition(S)
    assert sorted(dj.classes) == [(0,), (1, 2, 3, 4)]
    assert jstar_decomposition(S).classes == dj.classes


def test_slices_of_b2():
    d = j_decomposition(b2())
    by_size = sorted(slices(d), key=lambda s: len(s.members))
    bottom, top = by_size
    assert bottom.members == (0,) and bottom.semigroup.order == 1
    assert len(bottom.lower_ideal) == 0
    assert top.semigroup.order == 5
    assert canonical_form(top.semigroup.table) == canonical_form(b2().table)
    (one,) = slices(trivial_decomposition(b2()))
    assert one.semigroup == b2() and len(one.lower_ideal) == 0


def test_slice_of_semilattice():
    d = from_partition(semilattice2(), [[0], [1]], Poset.chain(2))
    sl = slices(d)[1]
    assert sl.lower_ideal.members == (0,) and sl.semigroup.order == 2


def test_star_ideal_examples():
    for S in (b2(), clifford4()):
        d = j_decomposition(S)
        assert all(star_ideal_check(d, a).holds for a in range(d.poset.size))
    assert star_ideal_check(trivial_decomposition(z2()), 0).holds


def test_semilattice_form_examples():
    assert semilattice_form(clifford4_decomposition()).holds
    assert semilattice_form(j_decomposition(clifford4())).holds
    v = semilattice_form(j_decomposition(b2()))
    assert not v.holds
    assert semilattice_form(trivial_decomposition(z2())).holds


def test_json_roundtrip_and_canonical_order():
    d = j_decomposition(b2())
    again = decomposition_from_json(b2(), json.dumps(d.to_json()))
    assert again == d
    firsts = [min(c) for c in d.classes]
    assert firsts == sorted(firsts)


def test_layered_semilattice_of_groups():
    S = clifford4()
    d = clifford4_decomposition()
    leq_l, leq_r = layered_preorders(S, d, self_targets(d))
    for a in S.elements:
        for b in S.elements:
            expect = d.poset.le(d.class_of[a], d.class_of[b])
            assert leq_l(a, b) == expect and leq_r(a, b) == expect
    assert all(v.holds for v in check_layering(S, d, self_targets(d), leq_l, leq_r))


def test_layered_one_class_gives_induced_pair():
    S = b2()
    d = trivial_decomposition(S)
    leq_l, leq_r = layered_preorders(S, d, [SliceTarget(S, tuple(S.elements))])
    g = green_preorders(S)
    assert (leq_l, leq_r) == (g.L, g.R)


def test_layered_mismatch():
    S = clifford4()
    d = clifford4_decomposition()
    with pytest.raises(SliceMismatch):
        layered_preorders(S, d, self_targets(d)[:1])
    bad = [SliceTarget(z2(), (0, 1)), SliceTarget(z2(), (0, 1))]
    with pytest.raises(SliceMismatch):
        layered_preorders(S, d, bad)


@settings(max_examples=80, deadline=None)
@given(some_semigroup)
def test_decomposition_invariants(S):
    dj = j_decomposition(S)
    assert sorted(dj.classes) == sorted(green_equivalences(S).J.classes())
    assert dj.element_order() == green_preorders(S).J
    ds = jstar_decomposition(S)
    assert ds.element_order() == jstar_preorder(S)
    for d in (dj, ds):
        for a in range(d.poset.size):
            assert star_ideal_check(d, a).holds or d is dj
        for sl in slices(d):
            validate(sl.semigroup.table)
        if semilattice_form(d).holds:
            for a in S.elements:
                for b in S.elements:
                    ca, cb = d.class_of[a], d.class_of[b]
                    c = d.class_of[S.mul(a, b)]
                    assert d.poset.le(c, ca) and d.poset.le(c, cb)


@settings(max_examples=80, deadline=None)
@given(some_semigroup)
def test_layered_mutual_order_is_slice_equivalence(S):
    d = j_decomposition(S)
    targets = self_targets(d)
    # the layering facts assume each slice is a straight left order in its target
    for sl in slices(d):
        assume(check_left_order(Embedding.whole(sl.semigroup)).is_straight)
    leq_l, leq_r = layered_preorders(S, d, targets)
    assert all(v.holds for v in check_layering(S, d, targets, leq_l, leq_r))


def test_regular_semigroups_have_star_ideal_slices():
    for S in semigroups_upto(4, True):
        if not S.is_regular():
            continue
        d = j_decomposition(S)
        assert all(star_ideal_check(d, a).holds for a in range(d.poset.size))

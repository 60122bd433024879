from hypothesis import given, settings, strategies as st

from leftorders.fixtures import b2, left_zero, null2, semilattice2, z2, z4
from leftorders.oracle import oracle_relations
from leftorders.relations import (
    Relation,
    green_equivalences,
    green_preorders,
    group_h_class,
    join,
    jstar_preorder,
    square_cancellable,
    star_ideal_closure,
    starred_equivalences,
    starred_preorders,
)

from conftest import semigroups_upto

some_semigroup = st.sampled_from(semigroups_upto(3))


def test_group_relations_universal():
    for S in (z2(), z4()):
        n = S.order
        assert all(r == Relation.universal(n) for r in green_equivalences(S))
        assert starred_equivalences(S).H == Relation.universal(n)


def test_left_zero():
    pre = green_preorders(left_zero())
    assert pre.L == Relation.universal(2)
    assert pre.R == Relation.identity(2)


def test_semilattice_order():
    pre = green_preorders(semilattice2())
    assert pre.J(0, 1) and not pre.J(1, 0)


def test_b2_classes():
    g = green_equivalences(b2())
    assert g.J.classes() == [(0,), (1, 2, 3, 4)]
    assert g.H == Relation.identity(5)
    assert g.L.classes() == [(0,), (1, 3), (2, 4)]


def test_null2_starred_singletons():
    assert starred_equivalences(null2()).L == Relation.identity(2)


def test_star_ideal_closure_b2():
    assert star_ideal_closure(b2(), [0]).members == (0,)


def test_jstar_on_b2():
    S = b2()
    J = jstar_preorder(S)
    assert J == green_preorders(S).J
    for a in S.elements:
        for b in S.elements:
            ab = S.mul(a, b)
            assert J(ab, a) and J(ab, b)


def test_square_cancellable_b2():
    assert square_cancellable(b2()) == frozenset({0, 1, 4})


def test_group_inverse_in_z4():
    info = group_h_class(z4(), 1)
    assert info.in_subgroup and info.inverse == 3 == z4().power(1, 3)
    assert not group_h_class(null2(), 1).in_subgroup


def test_join_of_partitions():
    a = Relation.from_partition(4, [[0, 1], [2], [3]])
    b = Relation.from_partition(4, [[1, 2], [0], [3]])
    assert join(a, b).classes() == [(0, 1, 2), (3,)]


def test_text_roundtrip():
    r = green_preorders(b2()).J
    assert Relation.from_text(r.to_text()) == r


@settings(max_examples=80, deadline=None)
@given(some_semigroup)
def test_relations_match_oracle(S):
    o = oracle_relations(S)
    g, gp = green_equivalences(S), green_preorders(S)
    s, sp = starred_equivalences(S), starred_preorders(S)
    assert (gp.L, gp.R, gp.J) == (o["leq_L"], o["leq_R"], o["leq_J"])
    assert (g.L, g.R, g.J, g.H, g.D) == (o["L"], o["R"], o["J"], o["H"], o["D"])
    assert (sp.L, sp.R) == (o["leq_Lstar"], o["leq_Rstar"])
    assert (s.L, s.R, s.H, s.D) == (o["Lstar"], o["Rstar"], o["Hstar"], o["Dstar"])
    assert jstar_preorder(S) == o["leq_Jstar"] == o["leq_Jstar_ideal"]


@settings(max_examples=80, deadline=None)
@given(some_semigroup)
def test_green_inside_starred(S):
    g, s = green_preorders(S), starred_preorders(S)
    assert g.L <= s.L and g.R <= s.R
    assert green_preorders(S).J <= jstar_preorder(S)
    assert starred_preorders(S).L.is_transitive()

import io
import itertools

import pytest

from leftorders.errors import Exhausted
from leftorders.fixtures import b2, clifford4, null2, trivial, z2, z4
from leftorders.oracle import (
    LABELLED_COUNTS,
    SearchBudget,
    canonical_form,
    enumerate_extensions,
    enumerate_semigroups,
    exhaustive_count,
    find_quotient_semigroup,
    oracle_relations,
    write_stream,
)
from leftorders.orders import Embedding, check_left_order, embedding_pair, is_straight_fast, pair_matches
from leftorders.relations import green_preorders, jstar_preorder
from leftorders.semigroup import find_nonassociative, parse_tables, validate
from leftorders.starpairs import green_pair, identity_pair, induced_star_pair


def test_small_counts():
    assert sum(1 for _ in enumerate_semigroups(1)) == 1
    assert sum(1 for _ in enumerate_semigroups(2)) == 8 == exhaustive_count(2)
    assert sum(1 for _ in enumerate_semigroups(2, up_to_iso=True)) == 5


def test_labelled_counts_to_four():
    for n in (1, 2, 3, 4):
        assert sum(1 for _ in enumerate_semigroups(n)) == LABELLED_COUNTS[n]


def test_iso_counts_to_four():
    assert [sum(1 for _ in enumerate_semigroups(n, up_to_iso=True)) for n in (1, 2, 3, 4)] == [1, 5, 24, 188]


def test_stream_is_row_major_and_deterministic():
    a = [S.table for S in enumerate_semigroups(3)]
    assert a == sorted(a)
    assert a == [S.table for S in enumerate_semigroups(3)]
    assert all(find_nonassociative(t) is None for t in a)


def test_budget_exhaustion_is_explicit():
    with pytest.raises(Exhausted):
        list(enumerate_semigroups(3, SearchBudget(max_tables=10)))
    with pytest.raises(Exhausted):
        list(enumerate_semigroups(6, SearchBudget(max_order=5)))
    with pytest.raises(ValueError):
        SearchBudget(max_order=0)


def test_extensions():
    (only,) = enumerate_extensions(z2(), 2)
    assert only.Q == z2()
    exts = list(enumerate_extensions(trivial(), 2))
    expect = sum(1 for flat in itertools.product(range(2), repeat=4)
                 if flat[0] == 0 and find_nonassociative([flat[:2], flat[2:]]) is None)
    assert len(exts) == expect
    for e in exts:
        validate(e.Q.table)
        assert e.Q.table[0][0] == 0


def test_null2_has_no_straight_quotient_up_to_4():
    found = [e for n in (2, 3, 4) for e in enumerate_extensions(null2(), n)
             if is_straight_fast(e.Q, e.S.members) and check_left_order(e).is_straight]
    assert found == []


def test_find_quotient():
    for S in (z4(), b2(), clifford4()):
        e = find_quotient_semigroup(S, green_pair(S))
        assert e is not None and e.Q.order == S.order
        assert check_left_order(e).is_straight
        assert induced_star_pair(e.Q, e.S) == green_pair(S)
        assert pair_matches(green_pair(S), e)
    assert find_quotient_semigroup(z2(), identity_pair(z2())) is None


def test_canonical_form():
    a = validate([[0, 0], [0, 1]])
    b = validate([[0, 1], [1, 1]])
    assert canonical_form(a.table) == canonical_form(b.table)
    assert canonical_form(z4().table) != canonical_form(validate([[a ^ b for b in range(4)] for a in range(4)]).table)


def test_write_stream_roundtrip():
    buf = io.StringIO()
    tables = list(enumerate_semigroups(2))
    assert write_stream(tables, buf, SearchBudget(), True) == 8
    text = buf.getvalue()
    assert text.startswith("# manifest:") and "complete=true" in text
    assert parse_tables(text) == tables


def test_oracle_relations_on_fixtures():
    for S in (b2(), z4(), clifford4()):
        o = oracle_relations(S)
        assert o["leq_J"] == green_preorders(S).J
        assert o["leq_Jstar"] == o["leq_Jstar_ideal"] == jstar_preorder(S)


def test_exhaustive_only_small():
    with pytest.raises(ValueError):
        exhaustive_count(4)


def test_found_quotient_replays():
    S = b2()
    e = find_quotient_semigroup(S, green_pair(S))
    again = Embedding.of(e.Q, e.S.members)
    assert check_left_order(again) == check_left_order(e)
    assert embedding_pair(again) == green_pair(S)

import pytest
from hypothesis import given, settings, strategies as st

from leftorders.errors import DegenerateSandwich, NonAssociative, NotAnIdeal, ParseError
from leftorders.fixtures import b2, chain, klein, left_zero, semilattice2, trivial, z2, z4
from leftorders.oracle import canonical_form, enumerate_semigroups
from leftorders.semigroup import (
    adjoin_identity,
    adjoin_zero,
    format_table,
    ideal_closure,
    iso_over_subset,
    parse_subset,
    parse_table,
    parse_tables,
    rees_matrix,
    rees_quotient,
    subsemigroup_closure,
    validate,
)

from conftest import semigroups_upto

some_semigroup = st.sampled_from(semigroups_upto(3))


def test_validate_accepts_min_and_z2():
    assert validate([[0, 0], [0, 1]]).order == 2
    assert validate([[0, 1], [1, 0]]).is_group()


def test_validate_reports_genuine_triple():
    t = [[1, 0], [0, 0]]
    with pytest.raises(NonAssociative) as exc:
        validate(t)
    i, j, k = exc.value.triple
    assert t[t[i][j]][k] != t[i][t[j][k]]
    assert (i, j, k) == (0, 0, 1)


def test_bad_entries_rejected():
    with pytest.raises(Exception):
        validate([[0, 2], [0, 0]])
    with pytest.raises(Exception):
        validate([[0, 0]])


def test_adjoin_identity():
    assert adjoin_identity(z2()) == z2()
    M = adjoin_identity(left_zero())
    assert M.order == 3 and M.identity() == 2


def test_adjoin_zero_twice():
    S = z4()
    T = adjoin_zero(adjoin_zero(S))
    assert T.order == S.order + 2
    assert T.zero() == S.order + 1


def test_subsemigroup_closure():
    assert subsemigroup_closure(z4(), [2]).members == (0, 2)


def test_ideal_closure_b2():
    assert ideal_closure(b2(), [0]).members == (0,)
    assert ideal_closure(b2(), [1]).members == (0, 1, 2, 3, 4)


def test_rees_quotient_examples():
    assert rees_quotient(semilattice2(), [0]).quotient.order == 2
    rq = rees_quotient(z2(), [])
    assert rq.quotient == z2() and rq.zero is None
    assert rees_quotient(z2(), [0, 1]).quotient.order == 1
    with pytest.raises(NotAnIdeal):
        rees_quotient(chain(3), [1])


def test_rees_matrix_gives_b2():
    M = rees_matrix(trivial(), 2, 2, [[0, None], [None, 0]])
    assert M.order == 5
    assert canonical_form(M.table) == canonical_form(b2().table)
    assert iso_over_subset(M, b2()) is not None
    assert rees_matrix(trivial(), 1, 1, [[0]]).order == 2
    with pytest.raises(DegenerateSandwich):
        rees_matrix(trivial(), 2, 1, [[0, None]])


def test_iso_over_subset():
    assert iso_over_subset(z4(), klein()) is None
    phi = iso_over_subset(z4(), z4(), {1: 3})
    assert phi is not None and phi[1] == 3 and phi[2] == 2


def test_parse_roundtrip_and_errors():
    S = b2()
    assert parse_table(format_table(S)) == S
    assert parse_table(format_table(S)).names == S.names
    both = parse_tables(format_table(S) + "\n" + format_table(z2()))
    assert both == [S, z2()]
    with pytest.raises(ParseError) as exc:
        parse_table("2\n0 0\n0 x\n")
    assert exc.value.line == 3
    with pytest.raises(NonAssociative):
        parse_table("2\n1 0\n0 0\n")
    assert parse_subset("2 0\n# c\n2\n", z4()) == (0, 2)
    with pytest.raises(ParseError):
        parse_subset("7", z4())


@settings(max_examples=60, deadline=None)
@given(some_semigroup)
def test_adjoin_properties(S):
    M = adjoin_identity(S)
    e = M.identity()
    assert e is not None
    assert all(M.mul(e, x) == x == M.mul(x, e) for x in M.elements)
    Z = adjoin_zero(S)
    z = Z.zero()
    assert z == S.order
    assert tuple(row[:S.order] for row in Z.table[:S.order]) == S.table


@settings(max_examples=60, deadline=None)
@given(some_semigroup, st.integers(min_value=0, max_value=8))
def test_rees_quotient_by_principal_ideal(S, k):
    a = k % S.order
    I = ideal_closure(S, [a])
    rq = rees_quotient(S, I)
    validate(rq.quotient.table)
    assert rq.quotient.order == S.order - len(I) + 1
    for x in S.elements:
        for y in S.elements:
            assert rq.projection[S.mul(x, y)] == rq.quotient.mul(rq.projection[x], rq.projection[y])


def test_every_enumerated_table_is_associative():
    for S in enumerate_semigroups(3):
        validate(S.table)

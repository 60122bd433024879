"""Finite semigroups as multiplication tables, and the constructions built on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateSandwich,
    IndexOutOfRange,
    NonAssociative,
    NotAGroup,
    NotAnIdeal,
    NotSubsemigroup,
    ParseError,
    SearchTooLarge,
)

ISO_SEARCH_CAP = 10


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """A semigroup on ``0..n-1`` given by its Cayley table.

    Equality and hashing use the table only; ``names`` are display metadata.
    Build through :func:`validate` unless the table is associative by
    construction.
    """

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        n = len(table)
        if n == 0:
            raise IndexOutOfRange("a semigroup needs at least one element")
        for i, row in enumerate(table):
            if len(row) != n:
                raise IndexOutOfRange(f"row {i} has {len(row)} entries, expected {n}")
            for j, x in enumerate(row):
                if not 0 <= x < n:
                    raise IndexOutOfRange(f"entry ({i}, {j}) = {x} outside [0, {n})")
        object.__setattr__(self, "table", table)
        if self.names is not None:
            names = tuple(str(x) for x in self.names)
            if len(names) != n or len(set(names)) != n:
                raise ValueError("names must be n distinct labels")
            object.__setattr__(self, "names", names)

    def __eq__(self, other):
        return isinstance(other, FiniteSemigroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order})"

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.intp)
        arr.flags.writeable = False
        return arr

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, *xs: int) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def power(self, a: int, k: int) -> int:
        acc = a
        for _ in range(k - 1):
            acc = self.table[acc][a]
        return acc

    def label(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in self.elements if self.table[e][e] == e)

    def identity(self) -> int | None:
        t = self.table
        for e in self.elements:
            if all(t[e][x] == x and t[x][e] == x for x in self.elements):
                return e
        return None

    def zero(self) -> int | None:
        t = self.table
        for z in self.elements:
            if all(t[z][x] == z and t[x][z] == z for x in self.elements):
                return z
        return None

    def has_zero(self) -> bool:
        return self.zero() is not None

    def is_regular_element(self, a: int) -> bool:
        t = self.table
        return any(t[t[a][x]][a] == a for x in self.elements)

    def is_regular(self) -> bool:
        return all(self.is_regular_element(a) for a in self.elements)

    def is_group(self) -> bool:
        e = self.identity()
        if e is None:
            return False
        return all(e in self.table[a] for a in self.elements)

    def induced(self, members: Iterable[int]) -> "FiniteSemigroup":
        """The subsemigroup on ``members``, reindexed in increasing member order."""
        members = sorted(set(members))
        pos = {x: i for i, x in enumerate(members)}
        try:
            table = tuple(tuple(pos[self.table[a][b]] for b in members) for a in members)
        except KeyError as exc:
            a, b = next((a, b) for a in members for b in members if self.table[a][b] not in pos)
            raise NotSubsemigroup((a, b, self.table[a][b])) from exc
        names = tuple(self.names[x] for x in members) if self.names else None
        return FiniteSemigroup(table, names)


def find_nonassociative(table: Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    """Lexicographically least triple violating associativity, or None."""
    n = len(table)
    for i in range(n):
        ti = table[i]
        for j in range(n):
            tij = table[ti[j]]
            tj = table[j]
            for k in range(n):
                if tij[k] != ti[tj[k]]:
                    return (i, j, k)
    return None


def validate(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FiniteSemigroup:
    """Return the semigroup with this table; raise if it is not associative."""
    S = FiniteSemigroup(tuple(tuple(row) for row in table), tuple(names) if names else None)
    bad = find_nonassociative(S.table)
    if bad is not None:
        raise NonAssociative(*bad)
    return S


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """S if S is a monoid, else S with a new identity appended at index n."""
    if S.identity() is not None:
        return S
    n = S.order
    table = [list(row) + [i] for i, row in enumerate(S.table)]
    table.append(list(range(n + 1)))
    names = S.names + ("1",) if S.names else None
    if names and len(set(names)) != len(names):
        names = None
    return FiniteSemigroup(tuple(map(tuple, table)), names)


def adjoin_zero(S: FiniteSemigroup) -> FiniteSemigroup:
    """S with a new absorbing element appended at index n, unconditionally."""
    n = S.order
    table = [list(row) + [n] for row in S.table]
    table.append([n] * (n + 1))
    names = S.names + ("0",) if S.names else None
    if names and len(set(names)) != len(names):
        names = None
    return FiniteSemigroup(tuple(map(tuple, table)), names)


@dataclass(frozen=True)
class SubsetHandle:
    parent: FiniteSemigroup
    members: tuple[int, ...]
    tag: str = "subset"

    def __post_init__(self):
        members = tuple(sorted(set(int(x) for x in self.members)))
        for x in members:
            if not 0 <= x < self.parent.order:
                raise IndexOutOfRange(f"member {x} outside [0, {self.parent.order})")
        object.__setattr__(self, "members", members)

    def __contains__(self, x):
        return x in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def position(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.members)}

    def semigroup(self) -> FiniteSemigroup:
        return self.parent.induced(self.members)


def closure_failure(S: FiniteSemigroup, members: Iterable[int]) -> tuple[int, int, int] | None:
    """First (a, b, ab) with a, b in members and ab outside, or None."""
    ms = sorted(set(members))
    mset = set(ms)
    for a in ms:
        for b in ms:
            if S.table[a][b] not in mset:
                return (a, b, S.table[a][b])
    return None


def ideal_failure(S: FiniteSemigroup, members: Iterable[int]) -> tuple[int, int, int] | None:
    """First (x, y, xy) with one factor in members and the product outside."""
    mset = set(members)
    for x in S.elements:
        for y in S.elements:
            if (x in mset or y in mset) and S.table[x][y] not in mset:
                return (x, y, S.table[x][y])
    return None


def subsemigroup_closure(S: FiniteSemigroup, seed: Iterable[int]) -> SubsetHandle:
    members = set(seed)
    if not members:
        raise ValueError("seed must be non-empty")
    frontier = list(members)
    while frontier:
        new = []
        current = list(members)
        for a in frontier:
            for b in current:
                for p in (S.table[a][b], S.table[b][a]):
                    if p not in members:
                        members.add(p)
                        new.append(p)
        frontier = new
    return SubsetHandle(S, tuple(members), "subsemigroup")


def ideal_closure(S: FiniteSemigroup, seed: Iterable[int]) -> SubsetHandle:
    """The two-sided ideal S^1 X S^1 generated by ``seed``."""
    t = S.table
    members = set(seed)
    members |= {t[x][a] for a in list(members) for x in S.elements}
    members |= {t[a][y] for a in list(members) for y in S.elements}
    return SubsetHandle(S, tuple(members), "ideal")


def as_ideal(S: FiniteSemigroup, members: Iterable[int]) -> SubsetHandle:
    members = tuple(members)
    bad = ideal_failure(S, members)
    if bad is not None:
        raise NotAnIdeal(bad)
    return SubsetHandle(S, members, "ideal")


@dataclass(frozen=True)
class ReesQuotient:
    """S/I with I collapsed to the highest index; S itself when I is empty."""

    source: FiniteSemigroup
    ideal: SubsetHandle
    quotient: FiniteSemigroup
    projection: tuple[int, ...]

    @property
    def zero(self) -> int | None:
        return self.quotient.order - 1 if len(self.ideal) else None


def rees_quotient(S: FiniteSemigroup, I: SubsetHandle | Iterable[int]) -> ReesQuotient:
    members = tuple(I.members if isinstance(I, SubsetHandle) else I)
    if not members:
        return ReesQuotient(S, SubsetHandle(S, (), "ideal"), S, tuple(S.elements))
    ideal = as_ideal(S, members)
    keep = [x for x in S.elements if x not in ideal]
    z = len(keep)
    proj = [z] * S.order
    for i, x in enumerate(keep):
        proj[x] = i
    table = [[proj[S.table[a][b]] for b in keep] + [z] for a in keep]
    table.append([z] * (z + 1))
    names = None
    if S.names:
        names = tuple(S.names[x] for x in keep) + ("0",)
        if len(set(names)) != len(names):
            names = tuple(S.names[x] for x in keep) + ("{I}",)
            if len(set(names)) != len(names):
                names = None
    Q = FiniteSemigroup(tuple(map(tuple, table)), names)
    return ReesQuotient(S, ideal, Q, tuple(proj))


def group_inverse_table(G: FiniteSemigroup) -> tuple[int, list[int]]:
    e = G.identity()
    if e is None:
        raise NotAGroup("no identity element")
    inv = []
    for g in G.elements:
        hits = [h for h in G.elements if G.table[g][h] == e and G.table[h][g] == e]
        if not hits:
            raise NotAGroup(f"element {g} has no inverse")
        inv.append(hits[0])
    return e, inv


def rees_matrix(G: FiniteSemigroup, I: int, L: int,
                P: Sequence[Sequence[int | None]]) -> FiniteSemigroup:
    """The Rees matrix semigroup M0(G; I, L; P) with zero at the highest index.

    ``P`` is an L x I matrix of group elements, with ``None`` for zero entries.
    Element (i, g, lam) has index ``(i * |G| + g) * L + lam``.
    """
    group_inverse_table(G)
    if len(P) != L or any(len(row) != I for row in P):
        raise ValueError(f"sandwich matrix must be {L} x {I}")
    for lam, row in enumerate(P):
        if all(p is None for p in row):
            raise DegenerateSandwich(f"row {lam} of the sandwich matrix is zero")
    for i in range(I):
        if all(P[lam][i] is None for lam in range(L)):
            raise DegenerateSandwich(f"column {i} of the sandwich matrix is zero")
    g_n = G.order
    n = I * g_n * L
    zero = n

    def idx(i, g, lam):
        return (i * g_n + g) * L + lam

    triples = [(i, g, lam) for i in range(I) for g in range(g_n) for lam in range(L)]
    table = []
    for (i, g, lam) in triples:
        row = []
        for (j, h, mu) in triples:
            p = P[lam][j]
            row.append(zero if p is None else idx(i, G.product(g, p, h), mu))
        row.append(zero)
        table.append(row)
    table.append([zero] * (n + 1))
    names = tuple(f"({i},{G.label(g)},{lam})" for (i, g, lam) in triples) + ("0",)
    return FiniteSemigroup(tuple(map(tuple, table)), names)


def iso_over_subset(Q1: FiniteSemigroup, Q2: FiniteSemigroup,
                    fixed: Mapping[int, int] | None = None,
                    cap: int = ISO_SEARCH_CAP) -> dict[int, int] | None:
    """An isomorphism Q1 -> Q2 extending ``fixed``, or None if there is none.

    ``fixed`` records how the common subsemigroup sits in each side (Q1 index to
    Q2 index). Backtracking assigns images in increasing Q1 order and closes
    the partial map under products after every choice.
    """
    n = Q1.order
    if n != Q2.order:
        return None
    if n > cap:
        raise SearchTooLarge(f"isomorphism search limited to order {cap}, got {n}")
    t1, t2 = Q1.table, Q2.table
    phi = [-1] * n
    used = [False] * n
    trail: list[int] = []

    def assign(a, b):
        if phi[a] >= 0:
            return phi[a] == b
        if used[b]:
            return False
        phi[a] = b
        used[b] = True
        trail.append(a)
        return True

    def close():
        changed = True
        while changed:
            changed = False
            known = [a for a in range(n) if phi[a] >= 0]
            for a in known:
                for b in known:
                    ab = t1[a][b]
                    img = t2[phi[a]][phi[b]]
                    if phi[ab] < 0:
                        if not assign(ab, img):
                            return False
                        changed = True
                    elif phi[ab] != img:
                        return False
        return True

    def undo(mark):
        while len(trail) > mark:
            a = trail.pop()
            used[phi[a]] = False
            phi[a] = -1

    for a, b in (fixed or {}).items():
        if not assign(a, b):
            return None
    if not close():
        return None

    def rec():
        try:
            a = phi.index(-1)
        except ValueError:
            return True
        for b in range(n):
            if used[b]:
                continue
            mark = len(trail)
            if assign(a, b) and close() and rec():
                return True
            undo(mark)
        return False

    if not rec():
        return None
    result = dict(enumerate(phi))
    for a in range(n):
        for b in range(n):
            if result[t1[a][b]] != t2[result[a]][result[b]]:
                raise AssertionError("isomorphism search returned a non-homomorphism")
    return result


# -- text formats ---------------------------------------------------------

def parse_table(text: str) -> FiniteSemigroup:
    """Parse one Cayley table block; see :func:`format_table` for the layout."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty table", 1)
    lineno, first = rows[0]
    if len(first) != 1:
        raise ParseError("first line must hold the order n", lineno)
    try:
        n = int(first[0])
    except ValueError:
        raise ParseError(f"bad order {first[0]!r}", lineno) from None
    if n < 1:
        raise ParseError("order must be positive", lineno)
    if len(rows) < n + 1:
        raise ParseError(f"expected {n} table rows, found {len(rows) - 1}", rows[-1][0])
    table = []
    for lineno, tokens in rows[1:n + 1]:
        if tokens[0] == "names:":
            raise ParseError("names line before the table is complete", lineno)
        if len(tokens) != n:
            raise ParseError(f"expected {n} entries, found {len(tokens)}", lineno)
        try:
            row = [int(x) for x in tokens]
        except ValueError:
            raise ParseError("non-integer entry", lineno) from None
        for x in row:
            if not 0 <= x < n:
                raise ParseError(f"entry {x} outside [0, {n})", lineno)
        table.append(row)
    names = None
    rest = rows[n + 1:]
    if rest:
        lineno, tokens = rest[0]
        if tokens[0] != "names:" or len(rest) > 1:
            raise ParseError("unexpected trailing content", lineno)
        names = tokens[1:]
        if len(names) != n or len(set(names)) != n:
            raise ParseError(f"names line needs {n} distinct labels", lineno)
    return validate(table, names)


def format_table(S: FiniteSemigroup) -> str:
    lines = [str(S.order)]
    lines += [" ".join(str(x) for x in row) for row in S.table]
    if S.names:
        lines.append("names: " + " ".join(S.names))
    return "\n".join(lines) + "\n"


def parse_tables(text: str) -> list[FiniteSemigroup]:
    """Parse concatenated table blocks separated by blank lines."""
    blocks, current, start = [], [], 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip():
            if not current:
                start = lineno
            current.append(raw)
        elif current:
            blocks.append((start, current))
            current = []
    if current:
        blocks.append((start, current))
    out = []
    for start, lines in blocks:
        if all(l.strip().startswith("#") for l in lines):
            continue
        try:
            out.append(parse_table("\n".join(lines)))
        except ParseError as exc:
            line = None if exc.line is None else exc.line + start - 1
            raise ParseError(str(exc).split(": ", 1)[-1], line) from None
    return out


def parse_subset(text: str, parent: FiniteSemigroup | None = None) -> tuple[int, ...]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tokens.extend((int(x), lineno) for x in line.split())
        except ValueError:
            raise ParseError("non-integer subset entry", lineno) from None
    if parent is not None:
        for x, lineno in tokens:
            if not 0 <= x < parent.order:
                raise ParseError(f"index {x} outside [0, {parent.order})", lineno)
    return tuple(sorted({x for x, _ in tokens}))

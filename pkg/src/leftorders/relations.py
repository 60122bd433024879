"""Green's relations, their starred analogues, and related element sets.

Everything is computed densely from the Cayley table. Starred relations
quantify over S^1: a <=_L* b iff bx = by implies ax = ay for all x, y in S^1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .errors import InternalInconsistency, NotPreorder
from .semigroup import FiniteSemigroup, SubsetHandle, ideal_closure

KINDS = ("raw", "preorder", "equivalence")

# Starred relations always quantify over S with an identity adjoined.
STARRED_OVER_S1 = True


class Relation:
    """A binary relation on ``0..n-1`` stored as a read-only boolean matrix.

    ``kind`` is checked on construction: a preorder must be reflexive and
    transitive, an equivalence additionally symmetric.
    """

    __slots__ = ("matrix", "kind")

    def __init__(self, matrix, kind: str = "raw"):
        m = np.array(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("relation matrix must be square")
        if kind not in KINDS:
            raise ValueError(f"unknown relation kind {kind!r}")
        m.flags.writeable = False
        self.matrix = m
        self.kind = kind
        if kind != "raw":
            if not self.is_reflexive():
                raise NotPreorder(f"not reflexive at {self._first(~np.diag(m))}")
            bad = self.transitivity_failure()
            if bad is not None:
                raise NotPreorder(f"not transitive at {bad}")
            if kind == "equivalence" and not self.is_symmetric():
                raise NotPreorder("equivalence is not symmetric")

    @staticmethod
    def _first(mask):
        idx = np.argwhere(mask)
        return tuple(int(x) for x in idx[0]) if len(idx) else None

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], kind: str = "raw") -> "Relation":
        m = np.zeros((n, n), dtype=bool)
        for a, b in pairs:
            m[a, b] = True
        return cls(m, kind)

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls(np.eye(n, dtype=bool), "equivalence")

    @classmethod
    def universal(cls, n: int) -> "Relation":
        return cls(np.ones((n, n), dtype=bool), "equivalence")

    @classmethod
    def from_partition(cls, n: int, classes: Iterable[Iterable[int]]) -> "Relation":
        m = np.zeros((n, n), dtype=bool)
        for c in classes:
            c = list(c)
            m[np.ix_(c, c)] = True
        return cls(m, "equivalence")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, a: int, b: int) -> bool:
        return bool(self.matrix[a, b])

    def __contains__(self, pair) -> bool:
        a, b = pair
        return bool(self.matrix[a, b])

    def __eq__(self, other):
        return isinstance(other, Relation) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __le__(self, other: "Relation") -> bool:
        return bool(np.all(~self.matrix | other.matrix))

    def __and__(self, other: "Relation") -> "Relation":
        kind = "equivalence" if self.kind == other.kind == "equivalence" else (
            "preorder" if self.kind != "raw" and other.kind != "raw" else "raw")
        return Relation(self.matrix & other.matrix, kind)

    def __repr__(self):
        return f"Relation(n={self.n}, kind={self.kind}, pairs={int(self.matrix.sum())})"

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in np.argwhere(self.matrix)]

    def is_reflexive(self) -> bool:
        return bool(np.all(np.diag(self.matrix)))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.matrix, self.matrix.T))

    def transitivity_failure(self) -> tuple[int, int, int] | None:
        """Least (a, b, c) with a~b, b~c but not a~c."""
        m = self.matrix
        comp = (m.astype(np.int32) @ m.astype(np.int32)) > 0
        bad = comp & ~m
        if not bad.any():
            return None
        a, c = self._first(bad)
        b = int(np.argmax(m[a] & m[:, c]))
        return (a, b, c)

    def is_transitive(self) -> bool:
        return self.transitivity_failure() is None

    def is_antisymmetric(self) -> bool:
        m = self.matrix
        return not bool(np.any(m & m.T & ~np.eye(self.n, dtype=bool)))

    def inverse(self) -> "Relation":
        return Relation(self.matrix.T, self.kind)

    def compose(self, other: "Relation") -> "Relation":
        """a (self o other) c iff a self b and b other c for some b."""
        m = (self.matrix.astype(np.int32) @ other.matrix.astype(np.int32)) > 0
        return Relation(m)

    def symmetrize(self) -> "Relation":
        """The equivalence self & self^-1 of a preorder."""
        return Relation(self.matrix & self.matrix.T, "equivalence")

    def restrict(self, members: Iterable[int]) -> "Relation":
        members = list(members)
        kind = self.kind
        return Relation(self.matrix[np.ix_(members, members)], kind)

    def as_kind(self, kind: str) -> "Relation":
        return Relation(self.matrix, kind)

    def classes(self) -> list[tuple[int, ...]]:
        """Equivalence classes sorted by least element."""
        if self.kind != "equivalence" and not (self.is_reflexive() and self.is_symmetric()
                                               and self.is_transitive()):
            raise NotPreorder("classes() needs an equivalence")
        seen = [False] * self.n
        out = []
        for a in range(self.n):
            if seen[a]:
                continue
            cls = tuple(int(x) for x in np.flatnonzero(self.matrix[a]))
            for x in cls:
                seen[x] = True
            out.append(cls)
        return out

    def class_of(self, a: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.matrix[a]))

    def to_text(self) -> str:
        return "\n".join("".join("1" if x else "0" for x in row) for row in self.matrix) + "\n"

    @classmethod
    def from_text(cls, text: str, kind: str = "raw") -> "Relation":
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        return cls([[c == "1" for c in row] for row in rows], kind)


def join(*rels: Relation) -> Relation:
    """Smallest equivalence containing all the given relations (union-find)."""
    n = rels[0].n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in rels:
        for a, b in np.argwhere(r.matrix):
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    roots = np.array([find(x) for x in range(n)])
    return Relation(roots[:, None] == roots[None, :], "equivalence")


def partition_text(rel: Relation) -> str:
    return "\n".join(" ".join(str(x) for x in c) for c in rel.classes()) + "\n"


# -- Green's relations ----------------------------------------------------

class GreenPreorders(NamedTuple):
    L: Relation
    R: Relation
    J: Relation


class GreenEquivalences(NamedTuple):
    L: Relation
    R: Relation
    H: Relation
    D: Relation
    J: Relation


class StarredPreorders(NamedTuple):
    L: Relation
    R: Relation


class StarredEquivalences(NamedTuple):
    L: Relation
    R: Relation
    H: Relation
    D: Relation


@lru_cache(maxsize=4096)
def green_preorders(S: FiniteSemigroup) -> GreenPreorders:
    """(<=_L, <=_R, <=_J): a <=_L b iff a in S^1 b, and so on."""
    n = S.order
    t = S.array
    eye = np.eye(n, dtype=bool)
    # left[a, b]: a in S b
    left = np.zeros((n, n), dtype=bool)
    right = np.zeros((n, n), dtype=bool)
    cols = np.arange(n)
    for x in range(n):
        left[t[x, :], cols] = True
        right[t[:, x], cols] = True
    leq_l = left | eye
    leq_r = right | eye
    # S^1 b S^1 = union of S^1 (b S^1): a <=_J b iff a <=_L c <=_R b for some c.
    leq_j = (leq_l.astype(np.int32) @ leq_r.astype(np.int32)) > 0
    return GreenPreorders(Relation(leq_l, "preorder"), Relation(leq_r, "preorder"),
                          Relation(leq_j, "preorder"))


@lru_cache(maxsize=4096)
def green_equivalences(S: FiniteSemigroup) -> GreenEquivalences:
    pre = green_preorders(S)
    L, R, J = pre.L.symmetrize(), pre.R.symmetrize(), pre.J.symmetrize()
    H = L & R
    lr, rl = L.compose(R), R.compose(L)
    if lr != rl:
        raise InternalInconsistency("L o R differs from R o L")
    return GreenEquivalences(L, R, H, lr.as_kind("equivalence"), J)


def _kernels(S: FiniteSemigroup, side: str) -> np.ndarray:
    """K[a, x, y] = (a x == a y) for side 'left' translation over S^1 (x, y)."""
    n = S.order
    t = S.array
    if side == "L":
        ext = np.concatenate([t, np.arange(n)[:, None]], axis=1)  # a*x, a*1 = a
    else:
        ext = np.concatenate([t.T, np.arange(n)[:, None]], axis=1)  # x*a, 1*a = a
    return ext[:, :, None] == ext[:, None, :]


@lru_cache(maxsize=4096)
def starred_preorders(S: FiniteSemigroup) -> StarredPreorders:
    """(<=_L*, <=_R*) quantified over S^1."""
    out = []
    for side in ("L", "R"):
        K = _kernels(S, side)
        n = S.order
        flat = K.reshape(n, -1)
        # a <= b iff ker(b) subset ker(a), i.e. no (x,y) with b-equal but a-unequal
        viol = flat[None, :, :] & ~flat[:, None, :]
        out.append(Relation(~viol.any(axis=2), "preorder"))
    return StarredPreorders(*out)


@lru_cache(maxsize=4096)
def starred_equivalences(S: FiniteSemigroup) -> StarredEquivalences:
    pre = starred_preorders(S)
    L, R = pre.L.symmetrize(), pre.R.symmetrize()
    return StarredEquivalences(L, R, L & R, join(L, R))


def star_ideal_closure(S: FiniteSemigroup, seed: Iterable[int]) -> SubsetHandle:
    """Smallest ideal containing ``seed`` that is a union of L*- and R*-classes."""
    st = starred_equivalences(S)
    members = set(seed)
    if not members:
        raise ValueError("seed must be non-empty")
    while True:
        members = set(ideal_closure(S, members).members)
        idx = sorted(members)
        saturated = set(np.flatnonzero(st.L.matrix[idx].any(axis=0) | st.R.matrix[idx].any(axis=0)).tolist())
        if saturated <= members:
            return SubsetHandle(S, tuple(members), "ideal")
        members |= saturated


@lru_cache(maxsize=4096)
def jstar_preorder(S: FiniteSemigroup) -> Relation:
    """a <=_J* b iff J*(a) is contained in J*(b), i.e. a lies in J*(b)."""
    n = S.order
    m = np.zeros((n, n), dtype=bool)
    for b in range(n):
        m[list(star_ideal_closure(S, [b]).members), b] = True
    return Relation(m, "preorder")


@lru_cache(maxsize=4096)
def square_cancellable(S: FiniteSemigroup) -> frozenset[int]:
    """{a : a H* a^2}."""
    H = starred_equivalences(S).H
    return frozenset(a for a in S.elements if H(a, S.table[a][a]))


@dataclass(frozen=True)
class GroupHClassInfo:
    element: int
    in_subgroup: bool
    identity: int | None = None
    inverse: int | None = None


def group_h_class(Q: FiniteSemigroup, a: int) -> GroupHClassInfo:
    """Decide whether H_a is a group; if so give its identity and a's inverse."""
    H = green_equivalences(Q).H
    t = Q.table
    by_square = H(a, t[a][a])
    h_class = H.class_of(a)
    by_idempotent = any(t[e][e] == e for e in h_class)
    if by_square != by_idempotent:
        raise InternalInconsistency(f"subgroup tests disagree at {a}")
    if not by_square:
        return GroupHClassInfo(a, False)
    # the idempotent power of a
    e = a
    while t[e][e] != e:
        e = t[e][a]
    inv = next(x for x in h_class if t[a][x] == e and t[x][a] == e)
    return GroupHClassInfo(a, True, e, inv)


def subgroup_inverses(Q: FiniteSemigroup) -> tuple[int | None, ...]:
    """a# for every a lying in a subgroup of Q, None elsewhere.

    Uses the monogenic subsemigroup: a is in a subgroup iff a^(k+1) = a for
    some k >= 1, and then a# = a^(2k-1).
    """
    return _subgroup_inverses(Q.table)


@lru_cache(maxsize=65536)
def _subgroup_inverses(t) -> tuple[int | None, ...]:
    out = []
    n = len(t)
    for a in range(n):
        p, k, inv = t[a][a], 1, None
        while k <= n:
            if p == a:
                q = a
                for _ in range(2 * k - 2):
                    q = t[q][a]
                inv = q
                break
            p = t[p][a]
            k += 1
        out.append(inv)
    return tuple(out)


def is_completely_regular(S: FiniteSemigroup) -> bool:
    return all(x is not None for x in subgroup_inverses(S))

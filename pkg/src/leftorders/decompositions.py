"""Decompositions of a semigroup as a partial order of subsets, and their slices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    EmptyClass,
    Incompatible,
    InternalInconsistency,
    NotAPartition,
    NotCompatiblePreorder,
    NotPreorder,
    SliceMismatch,
)
from .relations import (
    Relation,
    green_preorders,
    jstar_preorder,
    starred_equivalences,
)
from .semigroup import (
    FiniteSemigroup,
    ReesQuotient,
    SubsetHandle,
    ideal_failure,
    rees_quotient,
)
from .verdict import Verdict, first_failure


@dataclass(frozen=True, eq=False)
class Poset:
    leq: Relation

    def __post_init__(self):
        r = self.leq
        if not (r.is_reflexive() and r.is_transitive() and r.is_antisymmetric()):
            raise NotPreorder("poset order must be reflexive, transitive and antisymmetric")
        object.__setattr__(self, "leq", r.as_kind("preorder"))

    @classmethod
    def chain(cls, k: int) -> "Poset":
        return cls(Relation(np.tril(np.ones((k, k), dtype=bool)).T))

    @classmethod
    def antichain(cls, k: int) -> "Poset":
        return cls(Relation.identity(k))

    @property
    def size(self) -> int:
        return self.leq.n

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq.matrix[a, b])

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.leq.matrix[a, b])

    def meet(self, a: int, b: int) -> int | None:
        m = self.leq.matrix
        lower = [g for g in range(self.size) if m[g, a] and m[g, b]]
        tops = [g for g in lower if all(m[h, g] for h in lower)]
        return tops[0] if tops else None

    def __eq__(self, other):
        return isinstance(other, Poset) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)


@dataclass(frozen=True, eq=False)
class Decomposition:
    base: FiniteSemigroup
    poset: Poset
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        return (isinstance(other, Decomposition) and self.base == other.base
                and self.poset == other.poset and self.classes == other.classes)

    def __hash__(self):
        return hash((self.base, self.classes))

    def lower_ideal(self, alpha: int) -> tuple[int, ...]:
        return tuple(sorted(x for b in range(self.poset.size) if self.poset.lt(b, alpha)
                            for x in self.classes[b]))

    def closed_ideal(self, alpha: int) -> tuple[int, ...]:
        return tuple(sorted(x for b in range(self.poset.size) if self.poset.le(b, alpha)
                            for x in self.classes[b]))

    def element_order(self) -> Relation:
        """a <= b iff class(a) <= class(b)."""
        c = np.array(self.class_of)
        return Relation(self.poset.leq.matrix[np.ix_(c, c)], "preorder")

    def to_json(self) -> dict:
        return {
            "poset": {"size": self.poset.size,
                      "leq": self.poset.leq.to_text().split()},
            "classes": [list(c) for c in self.classes],
        }


def decomposition_from_json(S: FiniteSemigroup, data: dict | str) -> Decomposition:
    if isinstance(data, str):
        data = json.loads(data)
    rows = data["poset"]["leq"]
    if isinstance(rows, str):
        rows = rows.split()
    leq = Relation([[c == "1" if isinstance(c, str) else bool(c) for c in row] for row in rows])
    if leq.n != data["poset"]["size"]:
        raise NotAPartition("poset size does not match its matrix")
    return from_partition(S, data["classes"], Poset(leq))


def _compatibility_failure(S: FiniteSemigroup, class_of, poset: Poset):
    t = S.table
    m = poset.leq.matrix
    for a in S.elements:
        for b in S.elements:
            g = class_of[t[a][b]]
            if not (m[g, class_of[a]] and m[g, class_of[b]]):
                return (a, b, t[a][b])
    return None


def from_partition(S: FiniteSemigroup, classes: Sequence[Sequence[int]], poset: Poset) -> Decomposition:
    classes = tuple(tuple(sorted(int(x) for x in c)) for c in classes)
    if len(classes) != poset.size:
        raise NotAPartition(f"{len(classes)} classes for a poset of size {poset.size}")
    for alpha, c in enumerate(classes):
        if not c:
            raise EmptyClass(alpha)
    flat = [x for c in classes for x in c]
    if sorted(flat) != list(S.elements):
        raise NotAPartition("classes do not partition the elements exactly once")
    class_of = [0] * S.order
    for alpha, c in enumerate(classes):
        for x in c:
            class_of[x] = alpha
    bad = _compatibility_failure(S, class_of, poset)
    if bad:
        raise Incompatible(*bad)
    return Decomposition(S, poset, tuple(class_of), classes)


def from_preorder(S: FiniteSemigroup, pre: Relation) -> Decomposition:
    """Classes of pre & pre^-1 ordered by the induced order, canonically by least element."""
    if not (pre.is_reflexive() and pre.is_transitive()):
        raise NotPreorder("decomposing relation must be a preorder")
    t = S.table
    m = pre.matrix
    for a in S.elements:
        for b in S.elements:
            ab = t[a][b]
            if not (m[ab, a] and m[ab, b]):
                raise NotCompatiblePreorder(a, b)
    classes = pre.symmetrize().classes()
    reps = [c[0] for c in classes]
    poset = Poset(Relation(m[np.ix_(reps, reps)]))
    return from_partition(S, classes, poset)


def trivial_decomposition(S: FiniteSemigroup) -> Decomposition:
    return from_partition(S, [tuple(S.elements)], Poset.chain(1))


def j_decomposition(S: FiniteSemigroup) -> Decomposition:
    return from_preorder(S, green_preorders(S).J)


def jstar_decomposition(S: FiniteSemigroup) -> Decomposition:
    return from_preorder(S, jstar_preorder(S))


def is_order_of(d: Decomposition, pre: Relation) -> bool:
    """Whether d arises from the preorder: class(a) <= class(b) iff a pre b."""
    return d.element_order() == Relation(pre.matrix)


@dataclass(frozen=True)
class Slice:
    alpha: int
    members: tuple[int, ...]
    lower_ideal: SubsetHandle
    closed_ideal: SubsetHandle
    quotient: ReesQuotient
    embed: tuple[tuple[int, int], ...]

    @cached_property
    def index(self) -> dict[int, int]:
        """Base element of the closed ideal -> index in the slice semigroup."""
        return dict(self.embed)

    @property
    def semigroup(self) -> FiniteSemigroup:
        return self.quotient.quotient

    @property
    def zero(self) -> int | None:
        return self.quotient.zero

    def slice_index(self, x: int) -> int:
        return self.index[x]


def slice_at(d: Decomposition, alpha: int) -> Slice:
    S = d.base
    lower = d.lower_ideal(alpha)
    closed = d.closed_ideal(alpha)
    for name, ideal in (("lower", lower), ("closed", closed)):
        if ideal and ideal_failure(S, ideal) is not None:
            raise InternalInconsistency(f"{name} ideal at {alpha} is not an ideal")
    J = S.induced(closed)
    pos = {x: i for i, x in enumerate(closed)}
    rq = rees_quotient(J, [pos[x] for x in lower])
    embed = tuple((x, rq.projection[pos[x]]) for x in closed)
    return Slice(alpha, d.classes[alpha], SubsetHandle(S, lower, "ideal"),
                 SubsetHandle(S, closed, "ideal"), rq, embed)


def slices(d: Decomposition) -> list[Slice]:
    return [slice_at(d, a) for a in range(d.poset.size)]


def star_ideal_witness(S: FiniteSemigroup, ideal) -> tuple[int, int] | None:
    """(x, y) with x in the ideal, y outside, and x L* y or x R* y."""
    st = starred_equivalences(S)
    inside = set(ideal)
    for x in sorted(inside):
        for y in S.elements:
            if y not in inside and (st.L(x, y) or st.R(x, y)):
                return (x, y)
    return None


def star_ideal_check(d: Decomposition, alpha: int) -> Verdict:
    """Whether I_alpha and J_alpha are unions of L*-classes and of R*-classes."""
    for ideal in (d.closed_ideal(alpha), d.lower_ideal(alpha)):
        w = star_ideal_witness(d.base, ideal)
        if w is not None:
            return Verdict("star-ideal", False, (alpha,) + w,
                           "ideal cuts through an L*- or R*-class")
    return Verdict("star-ideal", True, None, "both slice ideals are *-ideals")


def semilattice_failure(d: Decomposition):
    P = d.poset
    pw = first_failure(range(P.size), 2, lambda a, b: P.meet(a, b) is not None)
    if pw is not None:
        return pw
    t = d.base.table
    c = d.class_of
    for a in d.base.elements:
        for b in d.base.elements:
            if c[t[a][b]] != P.meet(c[a], c[b]):
                return (a, b, t[a][b])
    return None


def semilattice_form(d: Decomposition) -> Verdict:
    """Poset is a meet-semilattice and S_a S_b lies inside S_(a meet b)."""
    w = semilattice_failure(d)
    return Verdict("semilattice", w is None, w,
                   "poset is a meet-semilattice and S_a S_b is inside S_(a^b)")


# -- layering --------------------------------------------------------------

@dataclass(frozen=True)
class SliceTarget:
    """A semigroup W containing the slice, via ``embed[i]`` = W-index of slice element i."""

    W: FiniteSemigroup
    embed: tuple[int, ...]


def check_target(sl: Slice, target: SliceTarget) -> None:
    T = sl.semigroup
    e = target.embed
    if len(e) != T.order:
        raise SliceMismatch(f"slice {sl.alpha} has {T.order} elements, embedding covers {len(e)}")
    if len(set(e)) != len(e) or any(not 0 <= x < target.W.order for x in e):
        raise SliceMismatch(f"embedding of slice {sl.alpha} is not injective into W")
    w = target.W.table
    for a in T.elements:
        for b in T.elements:
            if e[T.table[a][b]] != w[e[a]][e[b]]:
                raise SliceMismatch(f"embedding of slice {sl.alpha} is not a homomorphism at ({a}, {b})")


def slice_relations(sl: Slice, target: SliceTarget) -> tuple[np.ndarray, np.ndarray]:
    """<=_L and <=_R of W restricted to the class members (base-indexed, |S_a| square)."""
    pre = green_preorders(target.W)
    idx = [target.embed[sl.slice_index(x)] for x in sl.members]
    return pre.L.matrix[np.ix_(idx, idx)], pre.R.matrix[np.ix_(idx, idx)]


def layered_preorders(S: FiniteSemigroup, d: Decomposition,
                      targets: Sequence[SliceTarget]) -> tuple[Relation, Relation]:
    """a <=l b iff a L'_alpha cb for some c in S with a, cb in the same class alpha.

    <=r dually with bc. Returned as raw relations since transitivity is not
    guaranteed in general.
    """
    if d.base != S:
        raise SliceMismatch("decomposition is not over S")
    if len(targets) != d.poset.size:
        raise SliceMismatch(f"{len(targets)} targets for {d.poset.size} classes")
    n = S.order
    t = S.table
    # Lp[x, y], Rp[x, y] for x, y in the same class: W-Green relations
    Lp = np.zeros((n, n), dtype=bool)
    Rp = np.zeros((n, n), dtype=bool)
    for alpha, target in enumerate(targets):
        sl = slice_at(d, alpha)
        check_target(sl, target)
        le_l, le_r = slice_relations(sl, target)
        mem = list(sl.members)
        Lp[np.ix_(mem, mem)] = le_l & le_l.T
        Rp[np.ix_(mem, mem)] = le_r & le_r.T
    leq_l = np.zeros((n, n), dtype=bool)
    leq_r = np.zeros((n, n), dtype=bool)
    for a in S.elements:
        for b in S.elements:
            leq_l[a, b] = any(Lp[a, t[c][b]] for c in S.elements)
            leq_r[a, b] = any(Rp[a, t[b][c]] for c in S.elements)
    return Relation(leq_l), Relation(leq_r)


def check_layering(S: FiniteSemigroup, d: Decomposition, targets: Sequence[SliceTarget],
                   leq_l: Relation, leq_r: Relation) -> list[Verdict]:
    """Restriction to a class agrees with the slice order; mutual <= means same class and L'_alpha."""
    n = S.order
    within_l = np.zeros((n, n), dtype=bool)
    within_r = np.zeros((n, n), dtype=bool)
    for alpha, target in enumerate(targets):
        sl = slice_at(d, alpha)
        le_l, le_r = slice_relations(sl, target)
        mem = list(sl.members)
        within_l[np.ix_(mem, mem)] = le_l
        within_r[np.ix_(mem, mem)] = le_r
    same = np.array(d.class_of)[:, None] == np.array(d.class_of)[None, :]
    out = []
    for side, lay, within in (("l", leq_l.matrix, within_l), ("r", leq_r.matrix, within_r)):
        bad = same & (lay != within)
        w = tuple(int(x) for x in np.argwhere(bad)[0]) if bad.any() else None
        out.append(Verdict(f"layer-restriction-{side}", w is None, w,
                           "inside a class the layered order is the slice order"))
        mutual = lay & lay.T
        expect = same & within & within.T
        bad = mutual != expect
        w = tuple(int(x) for x in np.argwhere(bad)[0]) if bad.any() else None
        out.append(Verdict(f"layer-equivalence-{side}", w is None, w,
                           "a <= b <= a iff same class and slice-equivalent"))
    return out

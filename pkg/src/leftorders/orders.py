"""Left orders in a finite semigroup, and the structural properties used alongside them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .decompositions import j_decomposition, slices
from .errors import HypothesisNotMet, InternalInconsistency, NotAbundant, NotSubsemigroup
from .relations import (
    Relation,
    green_equivalences,
    green_preorders,
    square_cancellable,
    starred_equivalences,
    starred_preorders,
    subgroup_inverses,
)
from .semigroup import (
    FiniteSemigroup,
    ReesQuotient,
    SubsetHandle,
    adjoin_zero,
    closure_failure,
)
from .starpairs import StarPair, derive, induced_relations
from .verdict import Verdict, quantified


@dataclass(frozen=True, eq=False)
class Embedding:
    """A subsemigroup S of Q, given by its members (Q indices)."""

    Q: FiniteSemigroup
    S: SubsetHandle

    def __post_init__(self):
        if self.S.parent != self.Q:
            raise NotSubsemigroup("subset belongs to a different semigroup")
        if not len(self.S):
            raise NotSubsemigroup("empty subset")
        bad = closure_failure(self.Q, self.S.members)
        if bad is not None:
            raise NotSubsemigroup(bad)

    @classmethod
    def of(cls, Q: FiniteSemigroup, members) -> "Embedding":
        return cls(Q, SubsetHandle(Q, tuple(members), "subsemigroup"))

    @classmethod
    def whole(cls, Q: FiniteSemigroup) -> "Embedding":
        return cls.of(Q, Q.elements)

    @cached_property
    def semigroup(self) -> FiniteSemigroup:
        return self.Q.induced(self.S.members)


@dataclass(frozen=True)
class OrderReport:
    is_weak_left_order: bool
    is_left_order: bool
    is_straight_weak: bool
    is_straight: bool
    is_stratified: bool
    is_fully_stratified: bool
    witnesses: tuple[tuple[int, int, int], ...]
    failures: tuple[dict, ...] = field(default=())

    @property
    def flags(self) -> dict:
        return {
            "weak_left_order": self.is_weak_left_order,
            "left_order": self.is_left_order,
            "straight_weak": self.is_straight_weak,
            "straight": self.is_straight,
            "stratified": self.is_stratified,
            "fully_stratified": self.is_fully_stratified,
        }

    def to_json(self) -> dict:
        return {
            "flags": self.flags,
            "witnesses": [list(w) for w in self.witnesses],
            "failures": [dict(f) for f in self.failures],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OrderReport":
        f = data["flags"]
        return cls(f["weak_left_order"], f["left_order"], f["straight_weak"], f["straight"],
                   f["stratified"], f["fully_stratified"],
                   tuple(tuple(int(x) for x in w) for w in data["witnesses"]),
                   tuple(dict(x) for x in data["failures"]))


def representable(Q: FiniteSemigroup, members) -> set[int]:
    """{a# b : a, b in members, a in a subgroup of Q}."""
    inv = subgroup_inverses(Q)
    t = Q.table
    return {t[inv[a]][b] for a in members if inv[a] is not None for b in members}


def check_left_order(e: Embedding) -> OrderReport:
    """Decide whether S is a (weak, straight) left order in Q.

    Every q gets a witness (q, a, b) with q = a# b, preferring a R b in Q and
    then the lexicographically least pair.
    """
    Q, members = e.Q, e.S.members
    t = Q.table
    inv = subgroup_inverses(Q)
    R = green_equivalences(Q).R.matrix
    best: dict[int, tuple[int, int, bool]] = {}
    for a in members:
        ai = inv[a]
        if ai is None:
            continue
        row = t[ai]
        for b in members:
            q = row[b]
            straight = bool(R[a, b])
            cur = best.get(q)
            if cur is None or (straight and not cur[2]):
                best[q] = (a, b, straight)
    failures = []
    for q in Q.elements:
        if q not in best:
            failures.append({"kind": "unrepresentable", "element": q})
        elif not best[q][2]:
            failures.append({"kind": "not-straight", "element": q})
    weak = len(best) == Q.order
    straight_weak = weak and all(v[2] for v in best.values())
    S = e.semigroup
    ss = sorted(members[i] for i in square_cancellable(S))
    for a in ss:
        if inv[a] is None:
            failures.append({"kind": "square-cancellable-outside-subgroup", "element": a})
    left = weak and all(inv[a] is not None for a in ss)
    straight = left and straight_weak
    stratified = fully = False
    if straight:
        l, r = induced_relations(Q, e.S)
        star = starred_preorders(S)
        fully = l == star.L and r == star.R
        steq = starred_equivalences(S)
        stratified = l.symmetrize() == steq.L and r.symmetrize() == steq.R
    witnesses = tuple((q, best[q][0], best[q][1]) for q in sorted(best))
    return OrderReport(weak, left, straight_weak, straight, stratified, fully,
                       witnesses, tuple(failures))


def is_straight_fast(Q: FiniteSemigroup, members) -> bool:
    """Cheap necessary filter: every element of Q is some a# b."""
    return len(representable(Q, members)) == Q.order


def embedding_pair(e: Embedding) -> StarPair:
    l, r = induced_relations(e.Q, e.S)
    return StarPair(e.semigroup, l.as_kind("preorder"), r.as_kind("preorder"))


# -- zeroes ------------------------------------------------------------------

def zero_divisor_pair(S: FiniteSemigroup, z: int) -> tuple[int, int] | None:
    t = S.table
    for x in S.elements:
        for y in S.elements:
            if x != z and y != z and t[x][y] == z:
                return (x, y)
    return None


def check_zero_lemmas(e: Embedding, report: OrderReport | None = None) -> list[Verdict]:
    """Zero existence and zero divisors transfer between S and Q; S^0 sits straight in Q^0."""
    report = report or check_left_order(e)
    if not report.is_straight:
        raise HypothesisNotMet("S is not a straight left order in Q")
    Q, S = e.Q, e.semigroup
    zq, zs = Q.zero(), S.zero()
    zs_q = None if zs is None else e.S.members[zs]
    out = []
    if (zq is None) == (zs is None):
        out.append(Verdict("zero-existence", True, None,
                           "both have a zero" if zq is not None else "neither has a zero"))
    else:
        out.append(Verdict("zero-existence", False, (zq if zq is not None else zs_q,),
                           "exactly one of S, Q has a zero"))
    if zs is None:
        out.append(Verdict("zero-divisors", True, None, "S has no zero; nothing to compare"))
    else:
        ds = zero_divisor_pair(S, zs)
        dq = zero_divisor_pair(Q, zq) if zq is not None else None
        if (ds is None) == (dq is None):
            out.append(Verdict("zero-divisors", True, None,
                               "both have zero divisors" if ds else "neither has zero divisors"))
        else:
            w = dq if dq is not None else tuple(e.S.members[x] for x in ds)
            out.append(Verdict("zero-divisors", False, w,
                               "zero divisors present on one side only"))
    Q0 = adjoin_zero(Q)
    sub = check_left_order(Embedding.of(Q0, list(e.S.members) + [Q.order]))
    if sub.is_straight:
        out.append(Verdict("zero-adjunction", True, None, "S^0 is a straight left order in Q^0"))
    else:
        out.append(Verdict("zero-adjunction", False, (sub.failures[0]["element"],),
                           sub.failures[0]["kind"]))
    return out


# -- abundance ---------------------------------------------------------------

def check_abundant(S: FiniteSemigroup) -> Verdict:
    """Each L*-class and each R*-class contains an idempotent."""
    st = starred_equivalences(S)
    E = S.idempotents

    def ok(a):
        return any(st.L(a, f) for f in E) and any(st.R(a, f) for f in E)

    return quantified("abundant", S.elements, 1, ok,
                      "every L*-class and R*-class contains an idempotent")


def _ic_ok(S, star, a, e):
    t = S.table
    if t[e][e] != e:
        return True
    if star.L(e, a) and not any(t[a][e] == t[b][a] for b in S.elements):
        return False
    if star.R(e, a) and not any(t[e][a] == t[a][b] for b in S.elements):
        return False
    return True


def check_ic(S: FiniteSemigroup) -> Verdict:
    """Idempotent connectedness: e <=_L* a gives ae = ba for some b, dually."""
    if not check_abundant(S).holds:
        raise NotAbundant("IC is defined for abundant semigroups")
    star = starred_preorders(S)
    return quantified("IC", S.elements, 2, lambda a, e: _ic_ok(S, star, a, e),
                      "idempotents below a move across a")


def _factor_ok(S, star, steq, a, b):
    t = S.table
    left = bool(star.L(a, b)) == any(steq.L(a, t[c][b]) for c in S.elements)
    right = bool(star.R(a, b)) == any(steq.R(a, t[b][c]) for c in S.elements)
    return left and right


def check_starred_factorization(S: FiniteSemigroup) -> Verdict:
    """a <=_L* b iff a L* cb for some c, and dually; expected on IC abundant S."""
    star, steq = starred_preorders(S), starred_equivalences(S)
    return quantified("starred-factorization", S.elements, 2,
                      lambda a, b: _factor_ok(S, star, steq, a, b),
                      "a <=_L* b iff a L* cb for some c in S, and dually")


# -- simplicity --------------------------------------------------------------

def principal_factors(Q: FiniteSemigroup) -> list[ReesQuotient]:
    return [sl.quotient for sl in slices(j_decomposition(Q))]


def _c0s_witness(S: FiniteSemigroup) -> tuple[tuple[int, ...] | None, bool]:
    """Witness for the regular / single-class / primitive route, and the 0-simple route."""
    n = S.order
    z = S.zero() if n > 1 else None
    nonzero = [a for a in S.elements if a != z]
    J = green_equivalences(S).J
    t = S.table
    # route A
    witness = None
    for a in S.elements:
        if not S.is_regular_element(a):
            witness = (a,)
            break
    if witness is None:
        for a in nonzero:
            b = next((b for b in nonzero if not J(a, b)), None)
            if b is not None:
                witness = (a, b)
                break
    if witness is None:
        E = [f for f in S.idempotents if f != z]
        for e in E:
            for f in E:
                if f != e and t[e][f] == f and t[f][e] == f:
                    witness = (e, f, f)
                    break
            if witness is not None:
                break
    # route B: only ideals are S (and {0}); S^2 != {0}
    single = all(J(a, b) for a in nonzero for b in nonzero)
    square_nonzero = z is None or any(t[a][b] != z for a in S.elements for b in S.elements)
    return witness, single and square_nonzero


def check_completely_0_simple(S: FiniteSemigroup) -> Verdict:
    """Completely simple, or completely 0-simple when S has a zero."""
    witness, route_b = _c0s_witness(S)
    if (witness is None) != route_b:
        raise InternalInconsistency("the two complete 0-simplicity tests disagree")
    return Verdict("completely-0-simple", witness is None, witness,
                   "regular, one non-zero J-class, primitive idempotents")


def check_completely_semisimple(Q: FiniteSemigroup) -> Verdict:
    """Every principal factor is completely (0-)simple; witness is a member of a bad J-class."""
    d = j_decomposition(Q)
    for sl in slices(d):
        if not check_completely_0_simple(sl.semigroup).holds:
            return Verdict("completely-semisimple", False, (sl.members[0],),
                           f"principal factor of J-class {list(sl.members)} is not completely (0-)simple")
    return Verdict("completely-semisimple", True, None, "all principal factors completely (0-)simple")


def chain_depths(pair: StarPair, D: Relation, side: str = "l") -> dict[int, int]:
    """Longest strictly descending chain of L'- (or R'-) classes inside each D-class."""
    rel = pair.leq_l if side == "l" else pair.leq_r
    m = rel.matrix
    eq = rel.symmetrize()
    out = {}
    for dcls in D.classes():
        cls = sorted({eq.class_of(a)[0] for a in dcls})
        depth: dict[int, int] = {}

        def longest(x):
            if x not in depth:
                below = [y for y in cls if y != x and m[y, x] and not m[x, y]]
                depth[x] = 1 + max((longest(y) for y in below), default=0)
            return depth[x]

        out[dcls[0]] = max(longest(x) for x in cls)
    return out


def check_chain_conditions(pair: StarPair, D: Relation) -> list[Verdict]:
    """Descending chain conditions on L'- and R'-classes within D-classes; automatic when finite."""
    out = []
    for name, side in (("M_L*", "l"), ("M_R*", "r")):
        depths = chain_depths(pair, D, side)
        out.append(Verdict(name, True, None,
                           "finite; depth per D-class " + ", ".join(f"{k}:{v}" for k, v in depths.items())))
    return out


def is_completely_regular(S: FiniteSemigroup) -> bool:
    return all(x is not None for x in subgroup_inverses(S))


def pair_matches(pair: StarPair, e: Embedding) -> bool:
    """Whether Q induces exactly this pair on S (S indexed by member position)."""
    l, r = induced_relations(e.Q, e.S)
    return l == Relation(pair.leq_l.matrix) and r == Relation(pair.leq_r.matrix)


def lemma_relations(e: Embedding):
    """Derived relations of the induced pair, with <=_J and J of Q restricted to S."""
    d = derive(embedding_pair(e))
    jq = green_preorders(e.Q).J.restrict(e.S.members)
    return d, jq, green_equivalences(e.Q).J.restrict(e.S.members)


def check_restriction_lemma(e: Embedding) -> list[Verdict]:
    """On a straight left order: D' = L'oR' = R'oL', <=j and J' are the restrictions of <=_J and J."""
    d, jq, jeq = lemma_relations(e)
    lr, rl = d.Lp.compose(d.Rp), d.Rp.compose(d.Lp)

    def mismatch(a: Relation, b: Relation):
        bad = a.matrix != b.matrix
        return tuple(int(x) for x in np.argwhere(bad)[0]) if bad.any() else None

    out = []
    for name, a, b in (("D'-commutes", d.Dp, lr), ("D'-commutes-dual", d.Dp, rl),
                       ("leq_j-restricts", d.leq_j, jq), ("J'-restricts", d.Jp, jeq)):
        w = mismatch(Relation(a.matrix), Relation(b.matrix))
        out.append(Verdict(name, w is None, w))
    return out

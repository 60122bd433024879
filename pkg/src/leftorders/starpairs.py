"""*-pairs of preorders, their derived relations, and the embeddability conditions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotCompatible, NotContainedInStarred, NotPreorder
from .relations import (
    Relation,
    green_preorders,
    join,
    square_cancellable,
    starred_preorders,
)
from .semigroup import FiniteSemigroup, SubsetHandle
from .verdict import Verdict, first_failure, quantified


@dataclass(frozen=True, eq=False)
class StarPair:
    base: FiniteSemigroup
    leq_l: Relation
    leq_r: Relation

    def __eq__(self, other):
        return (isinstance(other, StarPair) and self.base == other.base
                and self.leq_l == other.leq_l and self.leq_r == other.leq_r)

    def __hash__(self):
        return hash((self.base, self.leq_l, self.leq_r))


def compatibility_failure(S: FiniteSemigroup, rel: Relation, side: str):
    """Least (a, b, c) with a <= b but not ac <= bc (side 'right') or ca <= cb ('left')."""
    t = S.array
    m = rel.matrix
    for c in S.elements:
        col = t[:, c] if side == "right" else t[c, :]
        image = m[np.ix_(col, col)]
        bad = m & ~image
        if bad.any():
            a, b = (int(x) for x in np.argwhere(bad)[0])
            return (a, b, c)
    return None


def make_star_pair(S: FiniteSemigroup, leq_l: Relation, leq_r: Relation) -> StarPair:
    """Validate the four *-pair axioms and return the pair."""
    n = S.order
    for name, rel in (("left", leq_l), ("right", leq_r)):
        if rel.n != n:
            raise NotPreorder(f"{name} relation has universe {rel.n}, expected {n}")
        if not rel.is_reflexive() or not rel.is_transitive():
            raise NotPreorder(f"{name} relation is not a preorder")
    leq_l, leq_r = leq_l.as_kind("preorder"), leq_r.as_kind("preorder")
    bad = compatibility_failure(S, leq_l, "right")
    if bad:
        raise NotCompatible("left", bad)
    bad = compatibility_failure(S, leq_r, "left")
    if bad:
        raise NotCompatible("right", bad)
    star = starred_preorders(S)
    for name, rel, ref in (("left", leq_l, star.L), ("right", leq_r, star.R)):
        escape = rel.matrix & ~ref.matrix
        if escape.any():
            raise NotContainedInStarred(name, tuple(int(x) for x in np.argwhere(escape)[0]))
    return StarPair(S, leq_l, leq_r)


def green_pair(S: FiniteSemigroup) -> StarPair:
    pre = green_preorders(S)
    return make_star_pair(S, pre.L, pre.R)


def starred_pair(S: FiniteSemigroup) -> StarPair:
    pre = starred_preorders(S)
    return make_star_pair(S, pre.L, pre.R)


def identity_pair(S: FiniteSemigroup) -> StarPair:
    eye = Relation.identity(S.order)
    return make_star_pair(S, eye, eye)


def induced_relations(Q: FiniteSemigroup, S: SubsetHandle) -> tuple[Relation, Relation]:
    """Green's preorders of Q restricted to S, reindexed over S's members."""
    pre = green_preorders(Q)
    return pre.L.restrict(S.members), pre.R.restrict(S.members)


def induced_star_pair(Q: FiniteSemigroup, S: SubsetHandle) -> StarPair:
    """The pair (<=_L^Q | S, <=_R^Q | S) on the semigroup induced on S."""
    base = Q.induced(S.members)
    l, r = induced_relations(Q, S)
    return make_star_pair(base, l, r)


@dataclass(frozen=True, eq=False)
class DerivedRelations:
    pair: StarPair
    Lp: Relation
    Rp: Relation
    Hp: Relation
    Dp: Relation
    leq_j: Relation
    leq_j_transitive: bool
    Jp: Relation
    gset: frozenset[int]

    @cached_property
    def ctx(self) -> "_Ctx":
        return _Ctx(self)


class _Ctx:
    """Plain-list views used by the quantified predicates."""

    def __init__(self, d: DerivedRelations):
        S = d.pair.base
        self.n = S.order
        self.t = S.table
        self.le_l = d.pair.leq_l.matrix.tolist()
        self.le_r = d.pair.leq_r.matrix.tolist()
        self.Lp = d.Lp.matrix.tolist()
        self.Rp = d.Rp.matrix.tolist()
        self.Hp = d.Hp.matrix.tolist()
        self.LR = d.Lp.compose(d.Rp).matrix.tolist()
        self.RL = d.Rp.compose(d.Lp).matrix.tolist()
        self.G = d.gset
        self.SS = square_cancellable(S)


def derive(pair: StarPair) -> DerivedRelations:
    S = pair.base
    t = S.array
    Lp, Rp = pair.leq_l.symmetrize(), pair.leq_r.symmetrize()
    Hp = Lp & Rp
    Dp = join(Lp, Rp)
    n = S.order
    # reach[b, x]: x = u b v for some u, v in S
    ub = t[:, :]  # ub[u, b]
    ubv = t[ub[:, :, None], np.arange(n)[None, None, :]]  # [u, b, v]
    reach = np.zeros((n, n), dtype=bool)
    for b in range(n):
        reach[b, np.unique(ubv[:, b, :])] = True
    leq_j = Relation((Dp.matrix.astype(np.int32) @ reach.T.astype(np.int32)) > 0)
    transitive = leq_j.is_transitive()
    Jp = Relation(leq_j.matrix & leq_j.matrix.T)
    gset = frozenset(a for a in S.elements if Hp(a, S.table[a][a]))
    return DerivedRelations(pair, Lp, Rp, Hp, Dp, leq_j, transitive, Jp, gset)


# -- predicates: each returns True when the condition holds at the given tuple

def _p_Ei(c: _Ctx, a, b):
    return c.LR[a][b] == c.RL[a][b]


def _p_Eii_l(c: _Ctx, b, x):
    return c.le_l[b][x] == any(c.Lp[b][c.t[d][x]] for d in range(c.n))


def _p_Eii_r(c: _Ctx, b, x):
    return c.le_r[b][x] == any(c.Rp[b][c.t[x][d]] for d in range(c.n))


def _p_Eiii(c: _Ctx, a):
    return (any(c.Lp[a][g] for g in c.G) and any(c.Rp[a][g] for g in c.G))


def _p_Ev_l(c: _Ctx, a, b):
    return not (a in c.G and c.le_l[b][a]) or c.Rp[c.t[b][a]][b]


def _p_Ev_r(c: _Ctx, a, b):
    return not (a in c.G and c.le_r[b][a]) or c.Lp[c.t[a][b]][b]


def _p_Evi_l(c: _Ctx, a, b, x):
    if a in c.G and c.le_l[b][a] and c.le_l[x][a] and c.t[b][a] == c.t[x][a]:
        return b == x
    return True


def _p_Evi_r(c: _Ctx, a, b, x):
    if a in c.G and c.le_r[b][a] and c.le_r[x][a] and c.t[a][b] == c.t[a][x]:
        return b == x
    return True


def _p_Evii_l(c: _Ctx, a, b, x):
    if a in c.G and c.le_l[b][a] and c.le_l[x][a] and c.Lp[c.t[b][a]][c.t[x][a]]:
        return c.Lp[b][x]
    return True


def _p_Evii_r(c: _Ctx, a, b, x):
    if a in c.G and c.le_r[b][a] and c.le_r[x][a] and c.Rp[c.t[a][b]][c.t[a][x]]:
        return c.Rp[b][x]
    return True


def _p_Gi(c: _Ctx, a):
    return (a in c.SS) == (a in c.G)


def _p_Gii(c: _Ctx, a, x, y):
    if a not in c.SS or not (c.Hp[a][x] and c.Hp[a][y]):
        return True
    cls = [z for z in range(c.n) if c.Hp[a][z]]
    return any(c.t[p][x] == c.t[q][y] for p in cls for q in cls)


def _p_cancel_R(c: _Ctx, a, b, x):
    """a in S(S): a^2 b R' a^2 x implies ab R' ax."""
    if a not in c.SS:
        return True
    t = c.t
    aa = t[a][a]
    if c.Rp[t[aa][b]][t[aa][x]]:
        return c.Rp[t[a][b]][t[a][x]]
    return True


EMBEDDABLE = (
    ("Ei", 2, _p_Ei, "L' o R' = R' o L'"),
    ("Eii-l", 2, _p_Eii_l, "b <=l c iff b L' dc for some d in S"),
    ("Eii-r", 2, _p_Eii_r, "b <=r c iff b R' cd for some d in S"),
    ("Eiii", 1, _p_Eiii, "every L'-class and R'-class meets G(S)"),
    ("Ev-l", 2, _p_Ev_l, "a in G(S), b <=l a implies ba R' b"),
    ("Ev-r", 2, _p_Ev_r, "a in G(S), b <=r a implies ab L' b"),
    ("Evi-l", 3, _p_Evi_l, "a in G(S), b, c <=l a, ba = ca implies b = c"),
    ("Evi-r", 3, _p_Evi_r, "a in G(S), b, c <=r a, ab = ac implies b = c"),
    ("Evii-l", 3, _p_Evii_l, "a in G(S), b, c <=l a, ba L' ca implies b L' c"),
    ("Evii-r", 3, _p_Evii_r, "a in G(S), b, c <=r a, ab R' ac implies b R' c"),
)

# condition name -> {witness arity: predicate}; used by checks and by replay
PAIR_PREDICATES = {name: {arity: pred} for name, arity, pred, _ in EMBEDDABLE}
PAIR_PREDICATES["Gi"] = {1: _p_Gi}
PAIR_PREDICATES["Gii"] = {3: _p_Gii}
PAIR_PREDICATES["II"] = {3: _p_cancel_R, 1: _p_Gi}
PAIR_PREDICATES["A"] = PAIR_PREDICATES["II"]


def check_embeddable(pair: StarPair, derived: DerivedRelations | None = None) -> list[Verdict]:
    c = (derived or derive(pair)).ctx
    dom = range(c.n)
    return [quantified(name, dom, arity, lambda *w, p=pred: p(c, *w), note)
            for name, arity, pred, note in EMBEDDABLE]


def right_reversible(S: FiniteSemigroup, T) -> Verdict:
    """For all a, b in T there are c, d in T with ca = db."""
    T = sorted(set(T))
    t = S.table

    def ok(a, b):
        return any(t[c][a] == t[d][b] for c in T for d in T)

    return quantified("right-reversible", T, 2, ok)


def check_G_conditions(pair: StarPair, derived: DerivedRelations | None = None) -> list[Verdict]:
    c = (derived or derive(pair)).ctx
    dom = range(c.n)
    return [
        quantified("Gi", dom, 1, lambda a: _p_Gi(c, a), "S(S) = G(S)"),
        quantified("Gii", dom, 3, lambda a, x, y: _p_Gii(c, a, x, y),
                   "H'-class of every square-cancellable element is right reversible"),
    ]


def cancellation_verdict(pair: StarPair, name: str = "II",
                         derived: DerivedRelations | None = None) -> Verdict:
    """a in S(S), a^2 b R' a^2 c implies ab R' ac; and S(S) = G(S)."""
    c = (derived or derive(pair)).ctx
    dom = range(c.n)
    note = "a^2 b R' a^2 c implies ab R' ac for a in S(S), and S(S) = G(S)"
    w = first_failure(dom, 3, lambda a, b, x: _p_cancel_R(c, a, b, x))
    if w is None:
        w = first_failure(dom, 1, lambda a: _p_Gi(c, a))
    return Verdict(name, w is None, w, note)


def check_theorem54_II(pair: StarPair, derived: DerivedRelations | None = None) -> Verdict:
    return cancellation_verdict(pair, "II", derived)


def is_embeddable(pair: StarPair, derived: DerivedRelations | None = None) -> bool:
    return all(v.holds for v in check_embeddable(pair, derived))


def replay_pair_witness(pair: StarPair, verdict: Verdict) -> bool:
    """True when the witness reproduces the recorded failure."""
    preds = PAIR_PREDICATES.get(verdict.condition)
    if preds is None or verdict.witness is None:
        return False
    pred = preds.get(len(verdict.witness))
    if pred is None:
        return False
    return not pred(derive(pair).ctx, *verdict.witness)

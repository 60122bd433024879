"""Theorem harnesses: each returns a list of Verdicts in a fixed order.

Existence claims are only searched up to a budget. When a search comes back
empty the verdict carries status ``bounded-consistent`` instead of being
reported as a disproof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .decompositions import (
    Decomposition,
    Slice,
    SliceTarget,
    check_layering,
    check_target,
    from_partition,
    j_decomposition,
    from_preorder,
    is_order_of,
    layered_preorders,
    semilattice_form,
    slice_at,
    star_ideal_check,
    star_ideal_witness,
)
from .errors import (
    Exhausted,
    HypothesisNotMet,
    Incompatible,
    NotAbundant,
    NotCompatible,
    NotCompatiblePreorder,
    NotContainedInStarred,
    NotPreorder,
    SliceMismatch,
)
from .oracle import EXTENSION_BUDGET, SearchBudget, _Meter, enumerate_extensions, find_quotient_semigroup
from .orders import (
    Embedding,
    OrderReport,
    check_abundant,
    check_chain_conditions,
    check_completely_0_simple,
    check_completely_semisimple,
    check_ic,
    check_left_order,
    check_restriction_lemma,
    check_zero_lemmas,
    embedding_pair,
    is_completely_regular,
    is_straight_fast,
    pair_matches,
)
from .relations import Relation, green_equivalences, green_preorders, jstar_preorder, starred_equivalences
from .semigroup import FiniteSemigroup, adjoin_zero, iso_over_subset
from .starpairs import (
    StarPair,
    cancellation_verdict,
    check_embeddable,
    check_G_conditions,
    derive,
    make_star_pair,
    starred_pair,
)
from .verdict import BOUNDED, EXACT, Verdict


def _first_bad(items):
    """First (alpha, ...) witness among per-class results, or None."""
    return next((w for w in items if w is not None), None)


def _verdict(name, witness, note=""):
    return Verdict(name, witness is None, witness, note)


# -- necessity and the zero and restriction lemmas --------------------------

def harness_necessity(e: Embedding, report: OrderReport | None = None) -> list[Verdict]:
    """The pair induced by a straight embedding is embeddable and satisfies (Gi), (Gii)."""
    report = report or check_left_order(e)
    if not report.is_straight:
        raise HypothesisNotMet("S is not a straight left order in Q")
    pair = embedding_pair(e)
    d = derive(pair)
    return check_embeddable(pair, d) + check_G_conditions(pair, d)


def harness_lemmas(e: Embedding, report: OrderReport | None = None) -> list[Verdict]:
    """Zero transfer, zero adjunction, and the restriction identities for <=j, J', D'."""
    report = report or check_left_order(e)
    return check_zero_lemmas(e, report) + check_restriction_lemma(e)


# -- slicing ----------------------------------------------------------------

@dataclass(frozen=True)
class SlicePair:
    """The slice of S sitting inside the matching slice of Q."""

    alpha: int
    slice_s: Slice
    slice_q: Slice
    image: tuple[int, ...]  # slice_s index -> slice_q index

    @property
    def embedding(self) -> Embedding:
        return Embedding.of(self.slice_q.semigroup, sorted(self.image))


def restrict_decomposition(e: Embedding, dQ: Decomposition) -> tuple[list[list[int]], Decomposition | None]:
    """S_alpha = Q_alpha meet S, in S indices; the decomposition is None when some class is empty."""
    pos = e.S.position
    classes = [[pos[q] for q in cls if q in pos] for cls in dQ.classes]
    if any(not c for c in classes):
        return classes, None
    return classes, from_partition(e.semigroup, classes, dQ.poset)


def slice_pairs(e: Embedding, dQ: Decomposition, dS: Decomposition) -> list[SlicePair]:
    members = e.S.members
    out = []
    for alpha in range(dQ.poset.size):
        sq, ss = slice_at(dQ, alpha), slice_at(dS, alpha)
        image = [0] * ss.semigroup.order
        for s, i in ss.embed:
            image[i] = sq.slice_index(members[s])
        out.append(SlicePair(alpha, ss, sq, tuple(image)))
    return out


def harness_slicing(e: Embedding, dQ: Decomposition, report: OrderReport | None = None) -> list[Verdict]:
    report = report or check_left_order(e)
    if not report.is_straight:
        raise HypothesisNotMet("S is not a straight left order in Q")
    if dQ.base != e.Q:
        raise HypothesisNotMet("decomposition is not over Q")
    S, Q = e.semigroup, e.Q
    classes, dS = restrict_decomposition(e, dQ)
    empty = next((a for a, c in enumerate(classes) if not c), None)
    out = [_verdict("slice-nonempty", None if empty is None else (empty,),
                    "every class of Q meets S")]
    if dS is None:
        return out
    pairs = slice_pairs(e, dQ, dS)
    reports = [check_left_order(p.embedding) for p in pairs]

    weak = []
    for p, r in zip(pairs, reports):
        bad = next((f for f in r.failures if f["kind"] != "square-cancellable-outside-subgroup"), None)
        weak.append(None if bad is None else (p.alpha, bad["element"]))
    out.append(_verdict("slice-straight-weak", _first_bad(weak),
                        "each slice of S is a straight weak left order in the slice of Q"))

    hs = starred_equivalences(S)
    crit = []
    for p, r in zip(pairs, reports):
        T = p.slice_s.semigroup
        ht = starred_equivalences(T)
        t2 = T.table
        transfer = all(not ht.H(p.slice_s.slice_index(a), t2[p.slice_s.slice_index(a)][p.slice_s.slice_index(a)])
                       or hs.H(a, S.table[a][a]) for a in p.slice_s.members)
        crit.append(None if r.is_straight == transfer else (p.alpha,))
    out.append(_verdict("slice-straight-criterion", _first_bad(crit),
                        "slice straight iff H*-square cancellation transfers from slice to S"))

    creg = is_completely_regular(Q)
    abundant = check_abundant(S).holds
    suff, applied = [], []
    for p, r in zip(pairs, reports):
        hyp = creg or (abundant and star_ideal_check(dS, p.alpha).holds)
        if hyp:
            applied.append(p.alpha)
        suff.append((p.alpha,) if hyp and not r.is_straight else None)
    out.append(_verdict("slice-straight-sufficient", _first_bad(suff),
                        f"hypothesis met at classes {applied}"))

    jq = is_order_of(dQ, green_preorders(Q).J)
    d = derive(embedding_pair(e))
    js = is_order_of(dS, d.leq_j)
    out.append(_verdict("order-transfer-j", None if jq == js else (),
                        f"J-order on Q: {jq}; j-order on S: {js}"))
    if report.is_stratified:
        jstar = is_order_of(dS, jstar_preorder(S))
        out.append(_verdict("order-transfer-jstar", None if jq == jstar else (),
                            f"J-order on Q: {jq}; J*-order on S: {jstar}"))
    else:
        out.append(Verdict("order-transfer-jstar", True, None, "not stratified; vacuous"))
    return out


# -- layering ---------------------------------------------------------------

def _pair_or_witness(S, leq_l: Relation, leq_r: Relation):
    try:
        return make_star_pair(S, leq_l, leq_r), None
    except NotPreorder:
        w = leq_l.transitivity_failure() or leq_r.transitivity_failure() or ()
        return None, tuple(w)
    except (NotCompatible, NotContainedInStarred) as exc:
        return None, tuple(exc.witness)


def _existence(name, holds_condition, found, exhausted, note):
    """Verdict for 'condition iff a quotient exists' where existence is searched."""
    if found is not None:
        return Verdict(name, holds_condition, None if holds_condition else (), note)
    extra = "budget exhausted" if exhausted else "no quotient within the search bound"
    return Verdict(name, True, None, f"{note}; {extra}", BOUNDED)


def _search(S, pair, embedding, budget):
    """(embedding or None, exhausted flag). A supplied embedding is checked, not searched."""
    if embedding is not None:
        ok = check_left_order(embedding).is_straight and pair_matches(pair, embedding)
        return (embedding if ok else None), False
    try:
        return find_quotient_semigroup(S, pair, budget), False
    except Exhausted:
        return None, True


def h_classes_over(e: Embedding, d: Decomposition) -> list[list[int]]:
    """Q_alpha = {q : q H k for some k in S_alpha}, in Q indices."""
    H = green_equivalences(e.Q).H
    out = []
    for cls in d.classes:
        ks = [e.S.members[k] for k in cls]
        out.append([q for q in e.Q.elements if any(H(q, k) for k in ks)])
    return out


def _conclusion(e: Embedding, d: Decomposition, targets: Sequence[SliceTarget]) -> list[Verdict]:
    """Q splits over the same poset, slices are straight, and slice of Q is W_alpha over slice of S."""
    Qc = h_classes_over(e, d)
    seen: dict[int, int] = {}
    bad = None
    for a, cls in enumerate(Qc):
        for q in cls:
            if q in seen and bad is None:
                bad = (q,)
            seen[q] = a
    if bad is None:
        bad = next(((q,) for q in e.Q.elements if q not in seen), None)
    if bad is None:
        pos = e.S.position
        bad = next(((pos[q],) for a, cls in enumerate(Qc) for q in cls
                    if q in pos and d.class_of[pos[q]] != a), None)
    out = [_verdict("Q-partition", bad, "the H-saturations of the classes partition Q")]
    if bad is not None:
        return out
    try:
        dQ = from_partition(e.Q, Qc, d.poset)
    except Incompatible as exc:
        out.append(Verdict("Q-decomposition", False, tuple(exc.witness)))
        return out
    out.append(Verdict("Q-decomposition", True, None, "Q is a partial order of the same poset"))
    _, dS = restrict_decomposition(e, dQ)
    pairs = slice_pairs(e, dQ, dS)
    out.append(_verdict("Q-slices-straight",
                        _first_bad(None if check_left_order(p.embedding).is_straight else (p.alpha,)
                                   for p in pairs)))
    iso = []
    for p, target in zip(pairs, targets):
        fixed = {p.image[i]: target.embed[i] for i in range(len(p.image))}
        found = iso_over_subset(p.slice_q.semigroup, target.W, fixed)
        iso.append(None if found is not None else (p.alpha,))
    out.append(_verdict("Q-slices-isomorphic", _first_bad(iso),
                        "each slice of Q is isomorphic to W_alpha over the slice of S"))
    return out


def _check_targets(S, d, targets, need_straight=True):
    if len(targets) != d.poset.size:
        raise HypothesisNotMet(f"{len(targets)} targets for {d.poset.size} classes")
    for alpha, target in enumerate(targets):
        sl = slice_at(d, alpha)
        try:
            check_target(sl, target)
        except SliceMismatch as exc:
            raise HypothesisNotMet(str(exc)) from exc
        if need_straight:
            r = check_left_order(Embedding.of(target.W, sorted(target.embed)))
            if not r.is_straight:
                raise HypothesisNotMet(f"slice {alpha} is not a straight left order in its target")


def layered_run(S: FiniteSemigroup, d: Decomposition, targets: Sequence[SliceTarget],
                embedding: Embedding | None = None, budget: SearchBudget | None = None,
                names=("I", "II", "III")):
    """Shared core of the layered harnesses; returns (verdicts, pair or None, embedding or None)."""
    _check_targets(S, d, targets)
    leq_l, leq_r = layered_preorders(S, d, targets)
    out = check_layering(S, d, targets, leq_l, leq_r)
    pair, w = _pair_or_witness(S, leq_l, leq_r)
    out.append(Verdict("star-pair", pair is not None, w,
                       "the layered relations form a *-pair"))
    n1, n2, n3 = names
    if pair is None:
        # an induced pair is always a *-pair, so no quotient can induce these relations
        out.append(Verdict(n2, False, None if w is None else w, "not a *-pair"))
        return out, None, None
    d_ = derive(pair)
    if n1 is not None:
        subs = check_embeddable(pair, d_) + check_G_conditions(pair, d_)[:1]
        failing = [v for v in subs if not v.holds]
        out.extend(subs)
        out.append(Verdict(n1, not failing, failing[0].witness if failing else None,
                           "failing: " + ", ".join(v.condition for v in failing) if failing
                           else "embeddable and S(S) = G(S)"))
    ii = cancellation_verdict(pair, n2, d_)
    out.append(ii)
    if n1 is not None:
        out.append(_verdict(f"{n1}-iff-{n2}", None if out[-2].holds == ii.holds else ()))
    found, exhausted = _search(S, pair, embedding, budget)
    if found is not None:
        out.append(Verdict(n3, True, None, f"quotient of order {found.Q.order}"))
    elif embedding is not None:
        out.append(Verdict(n3, False, (), "supplied embedding is not straight or induces another pair"))
    else:
        out.append(Verdict(n3, False, None, "not found within the search bound", BOUNDED))
    if embedding is not None and found is None:
        out.append(_verdict(f"{n2}-iff-{n3}", None if not ii.holds else (),
                            "supplied quotient rejected"))
    else:
        out.append(_existence(f"{n2}-iff-{n3}", ii.holds, found, exhausted,
                              "cancellation condition against existence of a quotient"))
    if found is not None:
        out.extend(_conclusion(found, d, targets))
    return out, pair, found


def harness_layered(S, d, targets, embedding=None, budget=None) -> list[Verdict]:
    """(I), (II), (III) for the layered pair, plus the structure of any quotient found."""
    return layered_run(S, d, targets, embedding, budget)[0]


# -- semilattices -----------------------------------------------------------

def semilattice_targets(S: FiniteSemigroup, d: Decomposition,
                        groups: Sequence[SliceTarget]) -> list[SliceTarget]:
    """W_alpha = T_alpha when nothing lies below alpha, otherwise T_alpha with a zero adjoined.

    ``groups[alpha].embed`` maps the members of S_alpha, in increasing order, into T_alpha.
    """
    out = []
    for alpha, tg in enumerate(groups):
        sl = slice_at(d, alpha)
        if len(tg.embed) != len(sl.members):
            raise HypothesisNotMet(f"target {alpha} covers {len(tg.embed)} of {len(sl.members)} elements")
        embed = [0] * sl.semigroup.order
        if sl.zero is None:
            W = tg.W
        else:
            W = adjoin_zero(tg.W)
            embed[sl.zero] = tg.W.order
        for k, x in enumerate(sl.members):
            embed[sl.slice_index(x)] = tg.embed[k]
        out.append(SliceTarget(W, tuple(embed)))
    return out


def harness_semilattice(S: FiniteSemigroup, d: Decomposition, groups: Sequence[SliceTarget],
                        embedding: Embedding | None = None,
                        budget: SearchBudget | None = None) -> list[Verdict]:
    sv = semilattice_form(d)
    if not sv.holds:
        raise HypothesisNotMet(f"not a semilattice decomposition: {sv.witness}")
    for alpha, tg in enumerate(groups):
        r = check_left_order(Embedding.of(tg.W, sorted(tg.embed)))
        if not r.is_straight:
            raise HypothesisNotMet(f"S_{alpha} is not a straight left order in T_{alpha}")
    targets = semilattice_targets(S, d, groups)
    out, pair, found = layered_run(S, d, targets, embedding, budget, names=(None, "A", "B"))
    if found is None:
        return out
    Qc = h_classes_over(found, d)
    bad_sub = next(((a,) for a, c in enumerate(Qc) if c and
                    any(found.Q.table[x][y] not in c for x in c for y in c)), None)
    out.append(_verdict("Q-subsemigroups", bad_sub, "each Q_alpha is a subsemigroup"))
    try:
        dQ = from_partition(found.Q, Qc, d.poset)
        out.append(Verdict("Q-semilattice", semilattice_form(dQ).holds, semilattice_form(dQ).witness))
    except Incompatible as exc:
        out.append(Verdict("Q-semilattice", False, tuple(exc.witness)))
    iso = []
    for alpha, (cls, tg) in enumerate(zip(Qc, groups)):
        Qa = found.Q.induced(cls)
        qpos = {q: i for i, q in enumerate(cls)}
        fixed = {qpos[found.S.members[x]]: tg.embed[k] for k, x in enumerate(d.classes[alpha])}
        iso.append(None if iso_over_subset(Qa, tg.W, fixed) is not None else (alpha,))
    out.append(_verdict("Q-classes-isomorphic", _first_bad(iso),
                        "each Q_alpha is isomorphic to T_alpha over S_alpha"))
    return out


# -- fully stratified -------------------------------------------------------

def _require_ic(S):
    try:
        if not check_ic(S).holds:
            raise HypothesisNotMet("S is abundant but not idempotent connected")
    except NotAbundant as exc:
        raise HypothesisNotMet("S is not abundant") from exc


def harness_fully_stratified(S: FiniteSemigroup, embedding: Embedding | None = None,
                             dQ: Decomposition | None = None, d: Decomposition | None = None,
                             targets: Sequence[SliceTarget] | None = None,
                             budget: SearchBudget | None = None) -> list[Verdict]:
    _require_ic(S)
    out: list[Verdict] = []
    if embedding is not None and dQ is not None:
        if embedding.semigroup != S:
            raise HypothesisNotMet("embedding is not of S")
        rep = check_left_order(embedding)
        if not (rep.is_straight and rep.is_fully_stratified):
            raise HypothesisNotMet("S is not a fully stratified straight left order in Q")
        classes, dS = restrict_decomposition(embedding, dQ)
        if dS is None:
            raise HypothesisNotMet("some class of Q misses S")
        sat = None
        for a in range(dS.poset.size):
            w = star_ideal_witness(S, dS.closed_ideal(a)) or star_ideal_witness(S, dS.lower_ideal(a))
            if w is not None:
                sat = (a,) + w
                break
        out.append(_verdict("fs-star-saturated", sat, "slice ideals of S are *-ideals"))
        pairs = slice_pairs(embedding, dQ, dS)
        reps = [check_left_order(p.embedding) for p in pairs]
        out.append(_verdict("fs-slice-straight", _first_bad(None if r.is_straight else (p.alpha,)
                                                              for p, r in zip(pairs, reps))))
        out.append(_verdict("fs-slice-abundant", _first_bad(
            None if check_abundant(p.slice_s.semigroup).holds else (p.alpha,) for p in pairs)))
        out.append(_verdict("fs-slice-fully-stratified", _first_bad(
            None if r.is_fully_stratified else (p.alpha,) for p, r in zip(pairs, reps))))
    if d is not None and targets is not None:
        _check_targets(S, d, targets)
        for alpha, target in enumerate(targets):
            sl = slice_at(d, alpha)
            if not check_abundant(sl.semigroup).holds:
                raise HypothesisNotMet(f"slice {alpha} is not abundant")
            r = check_left_order(Embedding.of(target.W, sorted(target.embed)))
            if not r.is_fully_stratified:
                raise HypothesisNotMet(f"slice {alpha} is not fully stratified in its target")
        st = starred_equivalences(S)
        sat = None
        for x in S.elements:
            y = next((y for y in S.elements if d.class_of[x] != d.class_of[y]
                      and (st.L(x, y) or st.R(x, y))), None)
            if y is not None:
                sat = (x, y)
                break
        out.append(_verdict("fs-classes-star-saturated", sat,
                            "each class is a union of L*- and R*-classes"))
        leq_l, leq_r = layered_preorders(S, d, targets)
        sp = starred_pair(S)
        out.append(_verdict("fs-layered-is-starred",
                            None if (leq_l == sp.leq_l and leq_r == sp.leq_r) else (),
                            "layered pair equals (<=_L*, <=_R*)"))
        cond = cancellation_verdict(sp, "fs-R*-condition")
        out.append(cond)
        found, exhausted = _search(S, sp, embedding, budget)
        out.append(_existence("fs-criterion", cond.holds, found, exhausted,
                              "R*-condition against existence of a fully stratified quotient"))
    return out


# -- completely semisimple --------------------------------------------------

def _slice_target_search(sl: Slice, restricted_l, restricted_r, straight: bool,
                         budget: SearchBudget) -> Embedding | None:
    """A completely (0-)simple extension of the slice in which it is a (straight) left order.

    When ``restricted_l`` is given the extension must also induce those relations
    on the class members.
    """
    T = sl.semigroup
    meter = _Meter(budget)
    idx = [sl.slice_index(x) for x in sl.members]
    for n in range(T.order, min(budget.max_order, T.order ** 2) + 1):
        for e in enumerate_extensions(T, n, budget, meter):
            if not is_straight_fast(e.Q, e.S.members):
                continue
            r = check_left_order(e)
            if not (r.is_straight if straight else r.is_left_order):
                continue
            if not check_completely_0_simple(e.Q).holds:
                continue
            if restricted_l is not None:
                pre = green_preorders(e.Q)
                if not ((pre.L.matrix[idx][:, idx] == restricted_l).all()
                        and (pre.R.matrix[idx][:, idx] == restricted_r).all()):
                    continue
            return e
    return None


def _target_ok(t: Embedding, sl: Slice, rl, rr, straight: bool) -> bool:
    r = check_left_order(t)
    if not (r.is_straight if straight else r.is_left_order):
        return False
    if not check_completely_0_simple(t.Q).holds:
        return False
    if rl is None:
        return True
    pre = green_preorders(t.Q)
    idx = [t.S.members[sl.slice_index(x)] for x in sl.members]
    return bool((pre.L.matrix[np.ix_(idx, idx)] == rl).all() and (pre.R.matrix[np.ix_(idx, idx)] == rr).all())


def _quotient_targets(e: Embedding, dj: Decomposition) -> dict[int, Embedding]:
    """Principal factors of Q as slice targets, when the J-classes of Q cut S into the classes of dj."""
    dQ = j_decomposition(e.Q)
    _, dS = restrict_decomposition(e, dQ)
    if dS is None:
        return {}
    where = {tuple(c): b for b, c in enumerate(dS.classes)}
    out = {}
    for alpha, cls in enumerate(dj.classes):
        beta = where.get(tuple(cls))
        if beta is None:
            continue
        sl, ss = slice_at(dj, alpha), slice_at(dS, beta)
        if sl.semigroup != ss.semigroup:
            continue
        p = slice_pairs(e, dQ, dS)[beta]
        out[alpha] = Embedding.of(p.slice_q.semigroup, p.image)
    return out


def harness_semisimple(S: FiniteSemigroup, pair: StarPair, embedding: Embedding | None = None,
                       budget: SearchBudget | None = None) -> list[Verdict]:
    """Conditions (i), (ii), (iii) for the given pair, with both readings of (iii)."""
    budget = budget or EXTENSION_BUDGET
    if pair.base != S:
        raise HypothesisNotMet("pair is not over S")
    dr = derive(pair)
    out: list[Verdict] = []

    # (ii)
    jd = None if dr.Jp == dr.Dp else tuple(int(x) for x in np.argwhere(dr.Jp.matrix != dr.Dp.matrix)[0])
    out.append(_verdict("ii-J'-equals-D'", jd, "J' = D'"))
    out.extend(check_chain_conditions(pair, dr.Dp))
    found, exhausted = _search(S, pair, embedding, budget)
    if found is not None:
        out.append(Verdict("ii-quotient", True, None, f"straight quotient of order {found.Q.order}"))
    elif embedding is not None:
        out.append(Verdict("ii-quotient", False, (), "supplied embedding is not straight or induces another pair"))
    else:
        out.append(Verdict("ii-quotient", False, None,
                           "budget exhausted" if exhausted else "not found within the search bound", BOUNDED))
    ii = jd is None and found is not None

    # (i)
    i_holds = False
    if found is not None:
        cs = check_completely_semisimple(found.Q)
        out.append(Verdict("i", cs.holds, cs.witness, "quotient is completely semisimple"))
        i_holds = cs.holds
        out.append(_verdict("i-implies-ii", None if (not i_holds or ii) else ()))
        out.append(_verdict("ii-implies-i", None if (not ii or i_holds) else (),
                            "the quotient from (ii) is itself completely semisimple"))

    # (iii)
    iii_base = []
    iii_base.append(Verdict("iii-star-pair", True, None, "pair validated on construction"))
    iii_base.append(cancellation_verdict(pair, "iii-cancellation", dr))
    out.extend(iii_base)
    if not dr.leq_j_transitive:
        out.append(Verdict("iii-decomposition", False, dr.leq_j.transitivity_failure(),
                           "<=j is not transitive"))
        return out
    try:
        dj = from_preorder(S, dr.leq_j.as_kind("preorder"))
    except (NotCompatiblePreorder, NotPreorder) as exc:
        out.append(Verdict("iii-decomposition", False, tuple(getattr(exc, "witness", ()) or ()),
                           "<=j does not give a decomposition"))
        return out
    out.append(Verdict("iii-decomposition", True, None, f"{dj.poset.size} classes"))
    from_q = _quotient_targets(found, dj) if found is not None else {}
    readings, bounded_any = {}, False
    targets_used = []
    for straight, name in ((False, "iii-slices-left-order"), (True, "iii-slices-straight")):
        bad, bounded = None, False
        tlist = []
        for alpha in range(dj.poset.size):
            sl = slice_at(dj, alpha)
            mem = list(sl.members)
            rl = pair.leq_l.matrix[mem][:, mem] if straight else None
            rr = pair.leq_r.matrix[mem][:, mem] if straight else None
            t = from_q.get(alpha)
            if t is not None and not _target_ok(t, sl, rl, rr, straight):
                t = None
            if t is None:
                try:
                    t = _slice_target_search(sl, rl, rr, straight, budget)
                except Exhausted:
                    t = None
                if t is None:
                    bounded = True
                    bad = bad or (alpha,)
            tlist.append(t)
        if bad is None:
            out.append(Verdict(name, True, None))
        else:
            out.append(Verdict(name, False, None, f"no target found for class {bad[0]} within bound",
                               BOUNDED if bounded else EXACT))
        readings[straight] = bad is None
        bounded_any = bounded_any or bounded
        if straight:
            targets_used = tlist
    out.append(Verdict("iii-readings-agree", True, None,
                       f"left-order reading {readings[False]}, straight reading {readings[True]}",
                       EXACT if readings[False] == readings[True] else BOUNDED))
    iii = readings[True] and all(v.holds for v in iii_base)
    if readings[True]:
        targets = [SliceTarget(t.Q, tuple(t.S.members)) for t in targets_used]
        leq_l, leq_r = layered_preorders(S, dj, targets)
        out.append(_verdict("iii-layered-pair",
                            None if (leq_l == Relation(pair.leq_l.matrix)
                                     and leq_r == Relation(pair.leq_r.matrix)) else (),
                            "layering the slice targets gives back the pair"))
    if found is not None:
        if i_holds and not iii and bounded_any:
            out.append(Verdict("i-implies-iii", True, None, "slice targets not found within bound", BOUNDED))
        else:
            out.append(_verdict("i-implies-iii", None if (not i_holds or iii) else ()))
    out.append(Verdict("summary", True, None, f"(i) {i_holds}, (ii) {ii}, (iii) {iii}"))
    return out

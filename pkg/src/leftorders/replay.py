"""Self-contained JSON artifacts and witness replay.

An artifact stores its inputs (tables, subsets, relations, decompositions) next
to the verdicts computed from them. Replaying re-reads only the JSON. Every
failure witness is checked directly against its condition where a direct check
exists. The producing check is also rerun to confirm that the same witness
comes back.
"""

from __future__ import annotations

import json
from typing import Callable

from .decompositions import (
    Decomposition,
    decomposition_from_json,
    j_decomposition,
    semilattice_form,
    slice_at,
    star_ideal_check,
)
from .harness import harness_lemmas, harness_necessity, harness_slicing
from .orders import (
    Embedding,
    OrderReport,
    _factor_ok,
    _ic_ok,
    check_abundant,
    check_completely_0_simple,
    check_completely_semisimple,
    check_ic,
    check_left_order,
    check_starred_factorization,
    embedding_pair,
    zero_divisor_pair,
)
from .relations import (
    Relation,
    green_equivalences,
    group_h_class,
    square_cancellable,
    starred_equivalences,
    starred_preorders,
)
from .semigroup import FiniteSemigroup, adjoin_zero, validate
from .starpairs import (
    StarPair,
    cancellation_verdict,
    check_embeddable,
    check_G_conditions,
    make_star_pair,
    replay_pair_witness,
)
from .errors import NotAbundant
from .verdict import SCHEMA_VERSION, Verdict

PAIR_CONDITIONS = {"Ei", "Eii-l", "Eii-r", "Eiii", "Ev-l", "Ev-r", "Evi-l", "Evi-r",
                   "Evii-l", "Evii-r", "Gi", "Gii", "II", "A"}


def _table(S: FiniteSemigroup) -> dict:
    return {"table": [list(r) for r in S.table], "names": list(S.names) if S.names else None}


def _semigroup(data: dict) -> FiniteSemigroup:
    return validate(data["table"], data.get("names"))


# -- building --------------------------------------------------------------

def semigroup_artifact(S: FiniteSemigroup) -> dict:
    verdicts = [check_abundant(S), check_starred_factorization(S),
                check_completely_0_simple(S), check_completely_semisimple(S)]
    try:
        verdicts.insert(1, check_ic(S))
    except NotAbundant:
        pass
    return {"schema": SCHEMA_VERSION, "kind": "semigroup", "S": _table(S),
            "verdicts": [v.to_json() for v in verdicts]}


def pair_artifact(pair: StarPair) -> dict:
    verdicts = check_embeddable(pair) + check_G_conditions(pair) + [cancellation_verdict(pair)]
    return {"schema": SCHEMA_VERSION, "kind": "pair", "S": _table(pair.base),
            "leq_l": pair.leq_l.to_text().split(), "leq_r": pair.leq_r.to_text().split(),
            "verdicts": [v.to_json() for v in verdicts]}


def decomposition_artifact(d: Decomposition) -> dict:
    verdicts = [star_ideal_check(d, a) for a in range(d.poset.size)] + [semilattice_form(d)]
    return {"schema": SCHEMA_VERSION, "kind": "decomposition", "S": _table(d.base),
            "decomposition": d.to_json(), "verdicts": [v.to_json() for v in verdicts]}


def order_artifact(e: Embedding) -> dict:
    report = check_left_order(e)
    verdicts: list[Verdict] = []
    if report.is_straight:
        verdicts = harness_necessity(e, report) + harness_lemmas(e, report) + \
            harness_slicing(e, j_decomposition(e.Q), report)
    return {"schema": SCHEMA_VERSION, "kind": "order", "Q": _table(e.Q),
            "members": list(e.S.members), "report": report.to_json(),
            "verdicts": [v.to_json() for v in verdicts]}


def dumps(artifacts: list[dict]) -> str:
    return json.dumps(artifacts)


def loads(text: str) -> list[dict]:
    return json.loads(text)


# -- direct witness checks --------------------------------------------------
# each returns True when the witness exhibits the failure

def _w_abundant(S, w):
    (a,) = w
    st = starred_equivalences(S)
    E = S.idempotents
    return not (any(st.L(a, f) for f in E) and any(st.R(a, f) for f in E))


def _w_ic(S, w):
    return not _ic_ok(S, starred_preorders(S), *w)


def _w_factor(S, w):
    return not _factor_ok(S, starred_preorders(S), starred_equivalences(S), *w)


def _w_c0s(S, w):
    z = S.zero() if S.order > 1 else None
    J = green_equivalences(S).J
    if len(w) == 1:
        return not S.is_regular_element(w[0])
    if len(w) == 2:
        a, b = w
        return a != z and b != z and not J(a, b)
    e, f, _ = w
    t = S.table
    return e != f and t[e][f] == f and t[f][e] == f and f != z and t[e][e] == e and t[f][f] == f


def _w_semisimple(S, w):
    (a,) = w
    d = j_decomposition(S)
    sl = slice_at(d, d.class_of[a])
    return not check_completely_0_simple(sl.semigroup).holds


def _w_star_ideal(d: Decomposition, w):
    alpha, x, y = w
    st = starred_equivalences(d.base)
    ideals = (set(d.closed_ideal(alpha)), set(d.lower_ideal(alpha)))
    return any(x in I and y not in I for I in ideals) and (st.L(x, y) or st.R(x, y))


def _w_semilattice(d: Decomposition, w):
    if len(w) == 2:
        return d.poset.meet(*w) is None
    a, b, ab = w
    return d.base.table[a][b] == ab and d.class_of[ab] != d.poset.meet(d.class_of[a], d.class_of[b])


def _w_zero_existence(e: Embedding, w):
    (z,) = w
    zq, zs = e.Q.zero(), e.semigroup.zero()
    zs_q = None if zs is None else e.S.members[zs]
    return (zq is None) != (zs is None) and z in (zq, zs_q)


def _w_zero_divisors(e: Embedding, w):
    x, y = w
    zq, zs = e.Q.zero(), e.semigroup.zero()
    if zq is None or zs is None:
        return False
    q_has, s_has = zero_divisor_pair(e.Q, zq), zero_divisor_pair(e.semigroup, zs)
    return (q_has is None) != (s_has is None) and x != zq and y != zq and e.Q.table[x][y] == zq


def _w_zero_adjunction(e: Embedding, w):
    (q,) = w
    Q0 = adjoin_zero(e.Q)
    sub = check_left_order(Embedding.of(Q0, list(e.S.members) + [e.Q.order]))
    return any(f["element"] == q for f in sub.failures)


DIRECT_SEMIGROUP: dict[str, Callable] = {
    "abundant": _w_abundant,
    "IC": _w_ic,
    "starred-factorization": _w_factor,
    "completely-0-simple": _w_c0s,
    "completely-semisimple": _w_semisimple,
}


# -- replay ------------------------------------------------------------------

def replay_report(Q: FiniteSemigroup, members, report: OrderReport) -> list[tuple[str, bool]]:
    """Check every recorded representation and failure of an OrderReport."""
    out = []
    mset = set(members)
    R = green_equivalences(Q).R
    for q, a, b in report.witnesses:
        info = group_h_class(Q, a)
        ok = (a in mset and b in mset and info.in_subgroup
              and Q.mul(info.inverse, b) == q)
        if report.is_straight:
            ok = ok and R(a, b)
        out.append((f"witness {q}={a}#{b}", ok))
    for f in report.failures:
        q = f["element"]
        if f["kind"] == "unrepresentable":
            ok = all(not group_h_class(Q, a).in_subgroup or Q.mul(group_h_class(Q, a).inverse, b) != q
                     for a in members for b in members)
        elif f["kind"] == "not-straight":
            ok = not any(group_h_class(Q, a).in_subgroup and R(a, b)
                         and Q.mul(group_h_class(Q, a).inverse, b) == q
                         for a in members for b in members)
        else:
            S = Q.induced(members)
            pos = {x: i for i, x in enumerate(members)}
            ok = pos[q] in square_cancellable(S) and not group_h_class(Q, q).in_subgroup
        out.append((f"failure {f['kind']} {q}", ok))
    return out


def _recomputed(artifact: dict) -> list[Verdict]:
    kind = artifact["kind"]
    if kind == "semigroup":
        return [Verdict.from_json(v) for v in semigroup_artifact(_semigroup(artifact["S"]))["verdicts"]]
    if kind == "pair":
        return [Verdict.from_json(v) for v in pair_artifact(_pair(artifact))["verdicts"]]
    if kind == "decomposition":
        return [Verdict.from_json(v) for v in decomposition_artifact(_decomposition(artifact))["verdicts"]]
    return [Verdict.from_json(v) for v in order_artifact(_embedding(artifact))["verdicts"]]


def _pair(artifact) -> StarPair:
    S = _semigroup(artifact["S"])
    return make_star_pair(S, Relation.from_text("\n".join(artifact["leq_l"])),
                          Relation.from_text("\n".join(artifact["leq_r"])))


def _decomposition(artifact) -> Decomposition:
    return decomposition_from_json(_semigroup(artifact["S"]), artifact["decomposition"])


def _embedding(artifact) -> Embedding:
    return Embedding.of(_semigroup(artifact["Q"]), artifact["members"])


def _direct(artifact: dict, v: Verdict) -> bool | None:
    """Direct evaluation of the witness, or None when the condition has no direct check."""
    kind = artifact["kind"]
    if kind == "semigroup" and v.condition in DIRECT_SEMIGROUP:
        return DIRECT_SEMIGROUP[v.condition](_semigroup(artifact["S"]), v.witness)
    if kind == "pair" and v.condition in PAIR_CONDITIONS:
        return replay_pair_witness(_pair(artifact), v)
    if kind == "decomposition":
        d = _decomposition(artifact)
        if v.condition == "star-ideal":
            return _w_star_ideal(d, v.witness)
        if v.condition == "semilattice":
            return _w_semilattice(d, v.witness)
    if kind == "order":
        e = _embedding(artifact)
        if v.condition in PAIR_CONDITIONS:
            return replay_pair_witness(embedding_pair(e), v)
        table = {"zero-existence": _w_zero_existence, "zero-divisors": _w_zero_divisors,
                 "zero-adjunction": _w_zero_adjunction}
        if v.condition in table:
            return table[v.condition](e, v.witness)
    return None


def replay_artifact(artifact: dict) -> list[tuple[str, bool]]:
    """(label, reproduced) for every report witness and every failing verdict."""
    if artifact.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unknown schema {artifact.get('schema')!r}")
    out = []
    if artifact["kind"] == "order":
        e = _embedding(artifact)
        out += replay_report(e.Q, e.S.members, OrderReport.from_json(artifact["report"]))
    recorded = [Verdict.from_json(v) for v in artifact["verdicts"]]
    failures = [v for v in recorded if not v.holds]
    if not failures:
        return out
    again = {(v.condition, v.witness) for v in _recomputed(artifact) if not v.holds}
    for v in failures:
        ok = (v.condition, v.witness) in again
        direct = _direct(artifact, v)
        if direct is not None:
            ok = ok and direct
        out.append((f"{artifact['kind']} {v.condition} {v.witness}", ok))
    return out

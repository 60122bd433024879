"""Command-line front end.

Exit status: 0 success, 1 a checked condition failed, 2 bad input,
3 a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decompositions import (
    decomposition_from_json,
    from_preorder,
    j_decomposition,
    jstar_decomposition,
    slices,
    star_ideal_check,
)
from .errors import Exhausted, HypothesisNotMet, SemigroupError
from .fixtures import Instance, load_corpus
from .harness import (
    SliceTarget,
    harness_fully_stratified,
    harness_layered,
    harness_lemmas,
    harness_necessity,
    harness_semilattice,
    harness_semisimple,
    harness_slicing,
    restrict_decomposition,
    slice_pairs,
)
from .oracle import SearchBudget, enumerate_semigroups, find_quotient_semigroup, straight_embeddings, write_stream
from .orders import (
    Embedding,
    check_abundant,
    check_ic,
    check_left_order,
    check_starred_factorization,
    embedding_pair,
)
from .relations import (
    Relation,
    green_equivalences,
    square_cancellable,
    starred_equivalences,
)
from .replay import decomposition_artifact, order_artifact, pair_artifact, replay_artifact, semigroup_artifact
from .semigroup import format_table, parse_subset, parse_table
from .starpairs import green_pair, identity_pair, make_star_pair, starred_pair
from .verdict import BOUNDED, SCHEMA_VERSION, Verdict

OK, FAILED, BAD_INPUT, EXHAUSTED = 0, 1, 2, 3
THEOREMS = ("1.3", "2.x", "4", "5.4", "6.1", "7.1", "8.1")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_table(path: str):
    try:
        return parse_table(_read(path))
    except SemigroupError as exc:
        raise InputError(f"{path}: {exc}") from None


def _budget(args) -> SearchBudget:
    return SearchBudget(max_order=args.budget_order, max_tables=args.budget_tables,
                        time_limit=args.time_limit)


def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _verdict_line(v: Verdict) -> str:
    mark = "ok  " if v.holds else ("??  " if v.status == BOUNDED else "FAIL")
    w = "" if v.witness is None else f" witness={list(v.witness)}"
    note = f"  ({v.note})" if v.note else ""
    tag = " [bounded]" if v.status == BOUNDED else ""
    return f"  {mark} {v.condition}{tag}{w}{note}"


def _pair(S, spec: str):
    builders = {"green": green_pair, "starred": starred_pair, "identity": identity_pair}
    if spec in builders:
        return builders[spec](S)
    data = json.loads(_read(spec))
    rel = {k: Relation.from_text("\n".join(data[k])) for k in ("leq_l", "leq_r")}
    return make_star_pair(S, rel["leq_l"], rel["leq_r"])


# -- verbs ------------------------------------------------------------------

def cmd_analyze(args) -> int:
    S = _load_table(args.table)
    geq, st = green_equivalences(S), starred_equivalences(S)
    abundant = check_abundant(S)
    ic = check_ic(S).holds if abundant.holds else None
    art = semigroup_artifact(S)
    verdicts = [Verdict.from_json(v) for v in art["verdicts"]]
    c0s = next(v for v in verdicts if v.condition == "completely-0-simple")
    css = next(v for v in verdicts if v.condition == "completely-semisimple")
    rels = {"L": geq.L, "R": geq.R, "H": geq.H, "D": geq.D, "J": geq.J,
            "L*": st.L, "R*": st.R, "H*": st.H, "D*": st.D}
    payload = dict(art, order=S.order, idempotents=list(S.idempotents),
                   square_cancellable=sorted(square_cancellable(S)),
                   relations={k: [list(c) for c in r.classes()] for k, r in rels.items()},
                   regular=S.is_regular(), abundant=abundant.holds, ic=ic)
    lines = [f"order {S.order}", f"idempotents {list(S.idempotents)}",
             f"square cancellable {sorted(square_cancellable(S))}"]
    lines += [f"{k:3s} " + " ".join("{" + ",".join(map(str, c)) + "}" for c in r.classes())
              for k, r in rels.items()]
    lines += [f"regular {S.is_regular()}", f"abundant {abundant.holds}",
              f"IC {ic if ic is not None else 'n/a (not abundant)'}",
              f"completely 0-simple {c0s.holds}", f"completely semisimple {css.holds}"]
    _emit(args, payload, lines)
    return OK


def cmd_check_order(args) -> int:
    Q = _load_table(args.table)
    members = parse_subset(_read(args.subset), Q) if args.subset else tuple(Q.elements)
    e = Embedding.of(Q, members)
    art = order_artifact(e)
    report = check_left_order(e)
    wanted = {"left_order": report.is_left_order}
    if args.straight:
        wanted["straight"] = report.is_straight
    if args.fully_stratified:
        wanted["fully_stratified"] = report.is_fully_stratified
    art["requested"] = wanted
    lines = [f"{k}: {v}" for k, v in report.flags.items()]
    lines += [f"  {q} = {a}# {b}" for q, a, b in report.witnesses]
    lines += [f"  failure {f['kind']} at {f['element']}" for f in report.failures]
    _emit(args, art, lines)
    return OK if all(wanted.values()) else FAILED


def cmd_check_starpair(args) -> int:
    S = _load_table(args.table)
    pair = _pair(S, args.pair)
    art = pair_artifact(pair)
    verdicts = [Verdict.from_json(v) for v in art["verdicts"]]
    _emit(args, art, [_verdict_line(v) for v in verdicts])
    return OK if all(v.holds for v in verdicts) else FAILED


def cmd_decompose(args) -> int:
    S = _load_table(args.table)
    if args.by == "j":
        d = j_decomposition(S)
    elif args.by == "jstar":
        d = jstar_decomposition(S)
    else:
        text = _read(args.by)
        if text.lstrip().startswith("{"):
            d = decomposition_from_json(S, json.loads(text))
        else:
            d = from_preorder(S, Relation.from_text(text))
    art = decomposition_artifact(d)
    art["slices"] = [{"alpha": sl.alpha, "members": list(sl.members),
                      "zero": sl.zero, "table": [list(r) for r in sl.semigroup.table]}
                     for sl in slices(d)]
    lines = [f"{d.poset.size} classes"]
    for sl in slices(d):
        v = star_ideal_check(d, sl.alpha)
        lines.append(f"class {sl.alpha}: {list(sl.members)}  below {list(sl.lower_ideal.members)}")
        lines.append(_verdict_line(v))
        lines += ["    " + r for r in format_table(sl.semigroup).splitlines()]
    _emit(args, art, lines)
    return OK


def _run_instance(theorem: str, inst: Instance, budget: SearchBudget) -> list[Verdict]:
    """Verdicts for one corpus instance; raises HypothesisNotMet when not applicable."""
    e = Embedding.of(inst.Q, inst.members)
    report = check_left_order(e)
    S = e.semigroup
    if theorem == "7.1":
        out = []
        for side in ("forward", "converse"):
            try:
                if side == "forward":
                    out += harness_fully_stratified(S, e, inst.decomposition or j_decomposition(inst.Q))
                elif report.is_straight:
                    dQ = inst.decomposition or j_decomposition(inst.Q)
                    _, dS = restrict_decomposition(e, dQ)
                    targets = [SliceTarget(p.slice_q.semigroup, p.image) for p in slice_pairs(e, dQ, dS)]
                    out += harness_fully_stratified(S, d=dS, targets=targets, budget=budget)
            except HypothesisNotMet:
                continue
        if not out:
            raise HypothesisNotMet("neither direction applies")
        return out
    if not report.is_straight:
        raise HypothesisNotMet("S is not a straight left order in Q")
    dQ = inst.decomposition or j_decomposition(inst.Q)
    if theorem == "1.3":
        return harness_necessity(e, report)
    if theorem == "2.x":
        out = harness_lemmas(e, report)
        if check_abundant(S).holds and check_ic(S).holds:
            out.append(check_starred_factorization(S))
        return out
    if theorem == "4":
        return harness_slicing(e, dQ, report)
    if theorem == "5.4":
        _, dS = restrict_decomposition(e, dQ)
        if dS is None:
            raise HypothesisNotMet("some class misses S")
        targets = [SliceTarget(p.slice_q.semigroup, p.image) for p in slice_pairs(e, dQ, dS)]
        return harness_layered(S, dS, targets, e, budget)
    if theorem == "6.1":
        if inst.decomposition is None:
            raise HypothesisNotMet("no semilattice decomposition supplied")
        _, dS = restrict_decomposition(e, inst.decomposition)
        groups = []
        for cls in dS.classes:
            T = S.induced(cls)
            groups.append(SliceTarget(T, tuple(range(len(cls)))))
        return harness_semilattice(S, dS, groups, e, budget)
    if theorem == "8.1":
        return harness_semisimple(S, embedding_pair(e), e, budget)
    raise InputError(f"unknown theorem {theorem}")


def cmd_harness(args) -> int:
    budget = _budget(args)
    instances = load_corpus(args.corpus) if args.corpus != "none" else []
    if args.sweep:
        for k, (e, _) in enumerate(straight_embeddings(args.sweep)):
            instances.append(Instance(f"sweep-{k}", e.Q, e.S.members))
    hard = exhausted = applicable = 0
    results = []
    lines = []
    for inst in instances:
        try:
            verdicts = _run_instance(args.theorem, inst, budget)
        except HypothesisNotMet as exc:
            results.append({"instance": inst.name, "applicable": False, "reason": str(exc)})
            lines.append(f"{inst.name}: not applicable ({exc})")
            continue
        except Exhausted as exc:
            exhausted += 1
            results.append({"instance": inst.name, "exhausted": str(exc)})
            lines.append(f"{inst.name}: budget exhausted ({exc})")
            continue
        applicable += 1
        bad = [v for v in verdicts if not v.holds and v.status != BOUNDED]
        hard += bool(bad)
        results.append({"instance": inst.name, "applicable": True,
                        "verdicts": [v.to_json() for v in verdicts]})
        lines.append(f"{inst.name}: {'FAIL' if bad else 'pass'}")
        if args.verbose or bad:
            lines += [_verdict_line(v) for v in verdicts]
    summary = (f"{len(instances)} instances, {applicable} applicable, "
               f"{applicable - hard} passed, {hard} failed, {exhausted} exhausted")
    lines.append(summary)
    _emit(args, {"schema": SCHEMA_VERSION, "theorem": args.theorem, "results": results,
                 "summary": summary}, lines)
    if hard:
        return FAILED
    return EXHAUSTED if exhausted else OK


def cmd_enumerate(args) -> int:
    budget = _budget(args)
    out = open(args.output, "w") if args.output else sys.stdout
    tables = []
    complete = True
    try:
        for S in enumerate_semigroups(args.order, budget, up_to_iso=args.up_to_iso):
            tables.append(S)
    except Exhausted:
        complete = False
    try:
        write_stream(tables, out, budget, complete)
    finally:
        if args.output:
            out.close()
    print(f"# {len(tables)} tables{'' if complete else ' (truncated)'}", file=sys.stderr)
    return OK if complete else EXHAUSTED


def cmd_find_quotient(args) -> int:
    S = _load_table(args.table)
    pair = _pair(S, args.pair)
    try:
        e = find_quotient_semigroup(S, pair, _budget(args))
    except Exhausted as exc:
        _emit(args, {"schema": SCHEMA_VERSION, "found": False, "exhausted": str(exc)},
              [f"budget exhausted: {exc}"])
        return EXHAUSTED
    if e is None:
        _emit(args, {"schema": SCHEMA_VERSION, "found": False,
                     "note": "not found within budget"}, ["not found within budget"])
        return FAILED
    art = order_artifact(e)
    art["found"] = True
    _emit(args, art, [f"found Q of order {e.Q.order}; S on indices {list(e.S.members)}",
                      format_table(e.Q).rstrip()])
    return OK


def cmd_replay(args) -> int:
    data = json.loads(_read(args.artifact))
    artifacts = data if isinstance(data, list) else [data]
    results = [r for a in artifacts for r in replay_artifact(a)]
    bad = [label for label, ok in results if not ok]
    _emit(args, {"schema": SCHEMA_VERSION, "checked": len(results), "failed": bad},
          [f"{len(results)} witnesses replayed, {len(bad)} did not reproduce"] + bad)
    return OK if not bad else FAILED


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leftorders", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget-order", type=int, default=6)
    common.add_argument("--budget-tables", type=int, default=None)
    common.add_argument("--time-limit", type=float, default=None)
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("analyze", parents=[common], help="relations and flags of one table")
    s.add_argument("table")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("check-order", parents=[common], help="is S a left order in Q")
    s.add_argument("table")
    s.add_argument("--subset", help="file listing the members of S (default: all of Q)")
    s.add_argument("--straight", action="store_true")
    s.add_argument("--fully-stratified", action="store_true")
    s.set_defaults(func=cmd_check_order)

    s = sub.add_parser("check-starpair", parents=[common], help="embeddability of a *-pair")
    s.add_argument("table")
    s.add_argument("--pair", default="green", help="green, starred, identity or a JSON file")
    s.set_defaults(func=cmd_check_starpair)

    s = sub.add_parser("decompose", parents=[common], help="decomposition and slices")
    s.add_argument("table")
    s.add_argument("--by", default="j", help="j, jstar, or a file (preorder rows or decomposition JSON)")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("harness", parents=[common], help="run a theorem harness over a corpus")
    s.add_argument("--theorem", choices=THEOREMS, required=True)
    s.add_argument("--corpus", default=None, help="corpus directory (default: bundled; 'none' to skip)")
    s.add_argument("--sweep", type=int, default=0, help="also sweep straight embeddings up to this order")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_harness)

    s = sub.add_parser("enumerate", parents=[common], help="stream all semigroups of an order")
    s.add_argument("order", type=int)
    s.add_argument("--up-to-iso", action="store_true")
    s.add_argument("--output")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("find-quotient", parents=[common], help="search for Q inducing a pair")
    s.add_argument("table")
    s.add_argument("--pair", default="green")
    s.set_defaults(func=cmd_find_quotient)

    s = sub.add_parser("replay", parents=[common], help="replay witnesses from a JSON artifact")
    s.add_argument("artifact")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (SemigroupError, ValueError, KeyError, json.JSONDecodeError) as exc:
        if isinstance(exc, Exhausted):
            print(f"budget exhausted: {exc}", file=sys.stderr)
            return EXHAUSTED
        w = getattr(exc, "witness", None)
        extra = f" (witness {list(w)})" if w is not None else ""
        print(f"error: {type(exc).__name__}: {exc}{extra}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

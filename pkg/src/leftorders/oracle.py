"""Brute-force generators, bounded existence searches and independent relation code."""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterator, TextIO

import numpy as np

from .errors import Exhausted
from .orders import Embedding, check_left_order, is_straight_fast, pair_matches
from .relations import Relation
from .semigroup import FiniteSemigroup, format_table
from .starpairs import StarPair

# raw labelled counts, for reference in tests and reports
LABELLED_COUNTS = {1: 1, 2: 8, 3: 113, 4: 3492, 5: 183732}


@dataclass(frozen=True)
class SearchBudget:
    max_order: int = 5
    max_tables: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be at least 1")

    def manifest(self, complete: bool) -> str:
        return (f"# manifest: max_order={self.max_order} max_tables={self.max_tables} "
                f"time_limit={self.time_limit} complete={'true' if complete else 'false'}")


EXTENSION_BUDGET = SearchBudget(max_order=6)


class _Meter:
    """Counts examined tables against a budget; shared across one search."""

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.count = 0
        self.start = time.monotonic()

    def tick(self):
        self.count += 1
        b = self.budget
        if b.max_tables is not None and self.count > b.max_tables:
            raise Exhausted(b, self.count - 1)
        if b.time_limit is not None and time.monotonic() - self.start > b.time_limit:
            raise Exhausted(b, self.count)


def _tables(n: int, prefix=()) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All associative n x n tables whose top-left block equals ``prefix``.

    Cells are filled in row-major order. Each assignment is pushed through
    every associativity triple it takes part in, forcing or refuting the
    partner cell whenever the other two products are already known.
    """
    m = len(prefix)
    N = n * n
    t = [-1] * N
    for i in range(m):
        for j in range(m):
            t[i * n + j] = prefix[i][j]
    R = range(n)
    trail: list[int] = []

    def settle(cell, value, queue):
        # returns False on contradiction
        x = t[cell]
        if x < 0:
            t[cell] = value
            trail.append(cell)
            queue.append(cell)
            return True
        return x == value

    def propagate(queue):
        while queue:
            c = queue.pop()
            i, j = divmod(c, n)
            v = t[c]
            # (ij)k = i(jk)
            for k in R:
                jk = t[j * n + k]
                if jk < 0:
                    continue
                left, right = v * n + k, i * n + jk
                if t[left] >= 0:
                    if not settle(right, t[left], queue):
                        return False
                elif t[right] >= 0:
                    settle(left, t[right], queue)
            # (ki)j = k(ij)
            for k in R:
                ki = t[k * n + i]
                if ki < 0:
                    continue
                left, right = ki * n + j, k * n + v
                if t[left] >= 0:
                    if not settle(right, t[left], queue):
                        return False
                elif t[right] >= 0:
                    settle(left, t[right], queue)
            # cell appears as an outer product: (ab)j with ab = i, or i(ab) with ab = j
            for a in R:
                row = a * n
                for b in R:
                    ab = t[row + b]
                    if ab == i:
                        bj = t[b * n + j]
                        if bj >= 0 and not settle(row + bj, v, queue):
                            return False
                    if ab == j:
                        ia = t[i * n + a]
                        if ia >= 0 and not settle(ia * n + b, v, queue):
                            return False
        return True

    if not propagate([c for c in range(N) if t[c] >= 0]):
        return

    def rec(start):
        c = start
        while c < N and t[c] >= 0:
            c += 1
        if c == N:
            yield tuple(tuple(t[i * n:(i + 1) * n]) for i in R)
            return
        for v in R:
            mark = len(trail)
            t[c] = v
            trail.append(c)
            if propagate([c]):
                yield from rec(c + 1)
            while len(trail) > mark:
                t[trail.pop()] = -1

    yield from rec(0)


def canonical_form(table) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least relabelling of the table (all n! permutations)."""
    T = np.asarray(table, dtype=np.int64)
    n = T.shape[0]
    if n <= 1:
        return tuple(tuple(int(x) for x in r) for r in T)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    inv = np.argsort(perms, axis=1)
    # relabelled[p][x][y] = p[T[inv[x]][inv[y]]]
    inner = T[inv[:, :, None], inv[:, None, :]]
    relabelled = np.take_along_axis(perms, inner.reshape(len(perms), -1), axis=1)
    order = np.lexsort(relabelled.T[::-1])
    best = relabelled[order[0]].reshape(n, n)
    return tuple(tuple(int(x) for x in r) for r in best)


def enumerate_semigroups(n: int, budget: SearchBudget | None = None,
                         up_to_iso: bool = False) -> Iterator[FiniteSemigroup]:
    """All associative n x n tables in row-major lexicographic order.

    With ``up_to_iso`` only the first table of each isomorphism class is kept.
    """
    budget = budget or SearchBudget()
    if n > budget.max_order:
        raise Exhausted(budget, 0)
    meter = _Meter(budget)
    seen: set = set()
    for tab in _tables(n):
        meter.tick()
        if up_to_iso:
            key = canonical_form(tab)
            if key in seen:
                continue
            seen.add(key)
        yield FiniteSemigroup(tab)


def enumerate_extensions(S: FiniteSemigroup, n: int,
                         budget: SearchBudget | None = None,
                         meter: _Meter | None = None) -> Iterator[Embedding]:
    """Every order-n semigroup Q whose restriction to indices [0, |S|) is S."""
    budget = budget or EXTENSION_BUDGET
    if n < S.order:
        raise ValueError(f"target order {n} is below |S| = {S.order}")
    if n > budget.max_order:
        raise Exhausted(budget, 0)
    meter = meter or _Meter(budget)
    members = tuple(range(S.order))
    for tab in _tables(n, S.table):
        meter.tick()
        yield Embedding.of(FiniteSemigroup(tab), members)


def find_quotient_semigroup(S: FiniteSemigroup, pair: StarPair,
                            budget: SearchBudget | None = None) -> Embedding | None:
    """First extension, by order then table, where S is straight and induces ``pair``.

    None means nothing was found within the budget. Orders above |S|^2 are
    skipped: every element of Q is a product a# b, so |Q| <= |S|^2.
    """
    budget = budget or EXTENSION_BUDGET
    if pair.base != S:
        raise ValueError("pair is not over S")
    meter = _Meter(budget)
    for n in range(S.order, min(budget.max_order, S.order ** 2) + 1):
        for e in enumerate_extensions(S, n, budget, meter):
            if not is_straight_fast(e.Q, e.S.members):
                continue
            if check_left_order(e).is_straight and pair_matches(pair, e):
                return e
    return None


def write_stream(tables, fh: TextIO, budget: SearchBudget, complete: bool) -> int:
    """Persist tables as blank-line separated blocks after a manifest line."""
    fh.write(budget.manifest(complete) + "\n\n")
    count = 0
    for S in tables:
        fh.write(format_table(S) + "\n")
        count += 1
    return count


# -- exhaustive filter -----------------------------------------------------

def exhaustive_count(n: int) -> int:
    """Associative tables among all n^(n*n) candidates; a path independent of the backtracker."""
    if n > 3:
        raise ValueError("exhaustive filtering is only practical for n <= 3")
    R = range(n)
    triples = list(itertools.product(R, R, R))
    count = 0
    for flat in itertools.product(R, repeat=n * n):
        if all(flat[flat[a * n + b] * n + c] == flat[a * n + flat[b * n + c]] for a, b, c in triples):
            count += 1
    return count


# -- independent relation code ---------------------------------------------

def _rel(n: int, pred) -> Relation:
    return Relation(np.array([[bool(pred(a, b)) for b in range(n)] for a in range(n)], dtype=bool))


def _reflexive_transitive_closure(n: int, edges: dict[int, set[int]]) -> list[set[int]]:
    """reach[a] = all c reachable from a (including a)."""
    out = []
    for a in range(n):
        seen = {a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in edges[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        out.append(seen)
    return out


def oracle_relations(S: FiniteSemigroup) -> dict[str, Relation]:
    """Green's, starred and J* relations from principal ideals and kernels, using sets only."""
    n = S.order
    t = S.table
    ones = list(range(n)) + [None]  # None stands for the adjoined identity

    def m(a, x):
        return a if x is None else t[a][x]

    def lm(x, a):
        return a if x is None else t[x][a]

    left = [frozenset(lm(x, a) for x in ones) for a in range(n)]
    right = [frozenset(m(a, x) for x in ones) for a in range(n)]
    two = [frozenset(lm(x, m(a, y)) for x in ones for y in ones) for a in range(n)]
    # right kernels {(x, y) : ax = ay} and left kernels {(x, y) : xa = ya}
    rker = [frozenset((i, j) for i, x in enumerate(ones) for j, y in enumerate(ones)
                      if m(a, x) == m(a, y)) for a in range(n)]
    lker = [frozenset((i, j) for i, x in enumerate(ones) for j, y in enumerate(ones)
                      if lm(x, a) == lm(y, a)) for a in range(n)]

    out = {
        "leq_L": _rel(n, lambda a, b: left[a] <= left[b]),
        "leq_R": _rel(n, lambda a, b: right[a] <= right[b]),
        "leq_J": _rel(n, lambda a, b: two[a] <= two[b]),
        "L": _rel(n, lambda a, b: left[a] == left[b]),
        "R": _rel(n, lambda a, b: right[a] == right[b]),
        "J": _rel(n, lambda a, b: two[a] == two[b]),
        "leq_Lstar": _rel(n, lambda a, b: rker[b] <= rker[a]),
        "leq_Rstar": _rel(n, lambda a, b: lker[b] <= lker[a]),
        "Lstar": _rel(n, lambda a, b: rker[a] == rker[b]),
        "Rstar": _rel(n, lambda a, b: lker[a] == lker[b]),
    }
    out["H"] = _rel(n, lambda a, b: out["L"](a, b) and out["R"](a, b))
    out["Hstar"] = _rel(n, lambda a, b: out["Lstar"](a, b) and out["Rstar"](a, b))
    # D by existence of a connecting element, D* by breadth-first search
    out["D"] = _rel(n, lambda a, b: any(out["L"](a, c) and out["R"](c, b) for c in range(n)))
    star_edges = {a: {b for b in range(n) if out["Lstar"](a, b) or out["Rstar"](a, b)}
                  for a in range(n)}
    dstar = _reflexive_transitive_closure(n, star_edges)
    out["Dstar"] = _rel(n, lambda a, b: b in dstar[a])
    # <=_J* through chains a = a_0, ..., a_k = b with a_i D* x a_(i+1) y
    chain_edges = {a: {c for c in range(n)
                       if any(lm(x, m(c, y)) in dstar[a] for x in ones for y in ones)}
                   for a in range(n)}
    below = _reflexive_transitive_closure(n, chain_edges)
    out["leq_Jstar"] = _rel(n, lambda a, b: b in below[a])
    out["leq_Jstar_ideal"] = _rel(n, lambda a, b: _star_ideal(S, b, out) >= {a})
    return out


def _star_ideal(S: FiniteSemigroup, a: int, rels: dict[str, Relation]) -> set[int]:
    """Smallest ideal containing a that is a union of L*- and R*-classes, grown as a set."""
    n = S.order
    t = S.table
    cur = {a}
    while True:
        grown = set(cur)
        for x in cur:
            grown |= {t[x][y] for y in range(n)} | {t[y][x] for y in range(n)}
            grown |= {y for y in range(n) if rels["Lstar"](x, y) or rels["Rstar"](x, y)}
        if grown == cur:
            return cur
        cur = grown



def straight_embeddings(max_order: int = 5, budget: SearchBudget | None = None):
    """Yield (embedding, report) for every straight left order S in Q with |Q| <= max_order.

    S runs over semigroups up to isomorphism; Q over all labelled extensions of
    S with S on the first indices, so every pair (S, Q) occurs up to isomorphism.
    """
    budget = budget or SearchBudget(max_order=max_order)
    meter = _Meter(budget)
    for m in range(1, max_order + 1):
        for S in enumerate_semigroups(m, budget, up_to_iso=True):
            for n in range(m, min(max_order, m * m) + 1):
                for e in enumerate_extensions(S, n, budget, meter):
                    if not is_straight_fast(e.Q, e.S.members):
                        continue
                    r = check_left_order(e)
                    if r.is_straight:
                        yield e, r

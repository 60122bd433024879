"""Small named semigroups used as fixtures and shipped as the bundled corpus."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .decompositions import Decomposition, Poset, decomposition_from_json, from_partition
from .semigroup import FiniteSemigroup, parse_subset, parse_table, rees_matrix, validate


def trivial() -> FiniteSemigroup:
    return validate([[0]], ["e"])


def cyclic(n: int) -> FiniteSemigroup:
    return validate([[(a + b) % n for b in range(n)] for a in range(n)])


def z2() -> FiniteSemigroup:
    return validate([[0, 1], [1, 0]], ["e", "g"])


def z4() -> FiniteSemigroup:
    return cyclic(4)


def klein() -> FiniteSemigroup:
    return validate([[a ^ b for b in range(4)] for a in range(4)], ["e", "a", "b", "c"])


def semilattice2() -> FiniteSemigroup:
    """{0 < 1} under meet."""
    return validate([[0, 0], [0, 1]], ["0", "1"])


def chain(n: int) -> FiniteSemigroup:
    return validate([[min(a, b) for b in range(n)] for a in range(n)])


def left_zero(n: int = 2) -> FiniteSemigroup:
    return validate([[a] * n for a in range(n)])


def right_zero(n: int = 2) -> FiniteSemigroup:
    return validate([list(range(n)) for _ in range(n)])


def null2() -> FiniteSemigroup:
    """{0, a} with every product 0."""
    return validate([[0, 0], [0, 0]], ["0", "a"])


def b2() -> FiniteSemigroup:
    """Matrix units e_ij of 2x2 matrices, with zero at index 0."""
    units = [(1, 1), (1, 2), (2, 1), (2, 2)]

    def mul(x, y):
        if x == 0 or y == 0:
            return 0
        (i, j), (k, l) = units[x - 1], units[y - 1]
        return units.index((i, l)) + 1 if j == k else 0

    return validate([[mul(x, y) for y in range(5)] for x in range(5)],
                    ["0", "e11", "e12", "e21", "e22"])


def clifford4() -> FiniteSemigroup:
    """Two copies of Z2 over the chain beta < alpha: 0=e0, 1=g0 below, 2=e1, 3=g1 above."""
    def mul(x, y):
        return min(x // 2, y // 2) * 2 + (x % 2 + y % 2) % 2

    return validate([[mul(x, y) for y in range(4)] for x in range(4)], ["e0", "g0", "e1", "g1"])


def clifford4_decomposition() -> Decomposition:
    return from_partition(clifford4(), [[0, 1], [2, 3]], Poset.chain(2))


def rees_z2() -> FiniteSemigroup:
    """M^0(Z2; 2, 2; P) with P = [[e, e], [e, g]]; the zero is the last element."""
    G = z2()
    return rees_matrix(G, 2, 2, [[0, 0], [0, 1]])


FIXTURES = {
    "trivial": trivial,
    "z2": z2,
    "z4": z4,
    "klein": klein,
    "semilattice2": semilattice2,
    "left_zero2": left_zero,
    "right_zero2": right_zero,
    "null2": null2,
    "b2": b2,
    "clifford4": clifford4,
    "rees_z2": rees_z2,
}


@dataclass(frozen=True)
class Instance:
    """A corpus entry: Q, the members of S (all of Q by default) and an optional decomposition of Q."""

    name: str
    Q: FiniteSemigroup
    members: tuple[int, ...]
    decomposition: Decomposition | None = None


def load_instance(table_path: Path) -> Instance:
    Q = parse_table(table_path.read_text())
    sub = table_path.with_suffix(".sub")
    members = parse_subset(sub.read_text(), Q) if sub.exists() else tuple(Q.elements)
    dec = table_path.with_suffix(".dec.json")
    d = decomposition_from_json(Q, json.loads(dec.read_text())) if dec.exists() else None
    return Instance(table_path.stem, Q, members, d)


def load_corpus(directory: Path | str | None = None) -> list[Instance]:
    """Every ``*.tbl`` under the directory, sorted by name; the bundled corpus by default."""
    if directory is None:
        directory = Path(str(resources.files("leftorders") / "corpus"))
    return [load_instance(p) for p in sorted(Path(directory).glob("*.tbl"))]

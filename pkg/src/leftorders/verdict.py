"""Pass/fail reports with replayable witnesses."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

SCHEMA_VERSION = "leftorders.report.v1"

EXACT = "exact"
BOUNDED = "bounded-consistent"


@dataclass(frozen=True)
class Verdict:
    condition: str
    holds: bool
    witness: tuple[int, ...] | None = None
    note: str = ""
    status: str = EXACT

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "witness": None if self.witness is None else list(self.witness),
            "note": self.note,
            "status": self.status,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Verdict":
        w = data.get("witness")
        return cls(data["condition"], bool(data["holds"]),
                   None if w is None else tuple(int(x) for x in w),
                   data.get("note", ""), data.get("status", EXACT))


def verdicts_to_json(verdicts: Iterable[Verdict]) -> str:
    return json.dumps([v.to_json() for v in verdicts], indent=2)


def verdicts_from_json(text: str) -> list[Verdict]:
    return [Verdict.from_json(d) for d in json.loads(text)]


def first_failure(domain: Sequence[int], arity: int,
                  pred: Callable[..., bool]) -> tuple[int, ...] | None:
    """Lexicographically least tuple over ``domain`` where ``pred`` is false."""
    for w in itertools.product(domain, repeat=arity):
        if not pred(*w):
            return w
    return None


def quantified(condition: str, domain: Sequence[int], arity: int,
               pred: Callable[..., bool], note: str = "") -> Verdict:
    w = first_failure(domain, arity, pred)
    if w is None:
        return Verdict(condition, True, None, note)
    return Verdict(condition, False, tuple(int(x) for x in w), note)

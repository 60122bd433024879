from functools import lru_cache

import pytest

from leftorders.oracle import enumerate_semigroups, straight_embeddings

# criterion number -> (label, passed); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@lru_cache(maxsize=None)
def semigroups_upto(n: int, up_to_iso: bool = False) -> tuple:
    """All semigroups of order 1..n, labelled unless up_to_iso."""
    return tuple(S for m in range(1, n + 1) for S in enumerate_semigroups(m, up_to_iso=up_to_iso))


@lru_cache(maxsize=None)
def accepted_embeddings(max_order: int = 5) -> tuple:
    """Every straight (S, Q) with |Q| <= max_order, with its report. Slow at 5 (about half a minute)."""
    return tuple(straight_embeddings(max_order))


@pytest.fixture(scope="session")
def sweep():
    return accepted_embeddings(5)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        label, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {label}")

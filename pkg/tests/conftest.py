from __future__ import annotations

import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sigmalattice.catalog import Signs, q4  # noqa: E402


@pytest.fixture
def signs2() -> Signs:
    return q4()


@pytest.fixture
def Q4(signs2):
    return signs2.space


@pytest.fixture
def xi(signs2):
    """``xi(1)``, ``xi(2)``, ``xi(1, 2)`` as sigma-fields on Q4."""
    return lambda *idx: signs2.sigma(signs2.xi(*idx))


_CRITERION = re.compile(r"test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for status in ("passed", "failed", "xfailed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and rep.when == "call" or (m and status == "error"):
                rows[int(m.group(1))] = "PASS" if status == "passed" else "FAIL"
    if rows:
        terminalreporter.section("acceptance criteria")
        for k in sorted(rows):
            terminalreporter.write_line(f"criterion {k:2d}: {rows[k]}")

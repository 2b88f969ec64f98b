"""Shared test plumbing.

The acceptance tests register one line per criterion; the terminal
summary prints them after the run so `pytest -v` ends with an explicit
PASS/FAIL line for each numbered criterion.
"""
from __future__ import annotations

import pytest

_CRITERION_LINES: list[tuple[int, str]] = []


@pytest.fixture
def criterion_report():
    def record(number: int, label: str, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail and not ok else ""
        _CRITERION_LINES.append((number, f"{status} criterion {number}: {label}{suffix}"))
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_CRITERION_LINES):
        terminalreporter.write_line(line)

"""Shared test plumbing: acceptance-criterion result lines.

The acceptance tests record one line per criterion through the
``record_criterion`` fixture. The lines are printed immediately (visible
with ``pytest -s``) and repeated in the terminal summary so they show up
in a default captured run as well.
"""

import pytest

_criterion_lines: list[str] = []


@pytest.fixture
def record_criterion():
    def _record(number: int, passed: bool, description: str) -> None:
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:2d} [{status}] {description}"
        print(line)
        _criterion_lines.append(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)

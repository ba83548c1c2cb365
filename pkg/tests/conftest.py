"""Shared pytest plumbing.

The acceptance tests each produce one PASS/FAIL line; fd-level capture would
hide those for passing tests, so they are collected here and replayed in the
terminal summary where they are always visible.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance_line(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

"""Shared test configuration.

The acceptance suite records one status line per criterion; they are echoed
in the terminal summary so a plain ``pytest -v`` run shows the scoreboard.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)

"""Shared pytest plumbing.

Collects the ``ACCEPTANCE n: ...`` verdict lines emitted by
tests/test_acceptance.py and repeats them in the terminal summary, where
output capture cannot hide them.
"""

import pytest

ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_report(request):
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def emit(line: str) -> None:
        print(line)
        lines.append(line)

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)

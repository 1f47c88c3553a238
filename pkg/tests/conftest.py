import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from khphi import bifiltered  # noqa: E402
from khphi.suites import computed  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "data")

# lines collected by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def knot():
    """Memoized (kh, completed model, phi) by specifier."""
    return computed


@pytest.fixture
def staircase():
    with open(os.path.join(DATA, "pretzel_staircase.json")) as fh:
        return bifiltered.loads(fh.read())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

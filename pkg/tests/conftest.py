import pytest

from latlab import enumerate_sr, s7

# Lines recorded by the acceptance tests, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def family():
    """The SR family with at most 25 elements and 3 forks."""
    return list(enumerate_sr(25, 3))


@pytest.fixture
def S7():
    return s7()

import pytest

from cespdc import make_cavity, make_gain

# filled by test_acceptance.py so the criterion lines appear in the terminal
# summary even when pytest captures stdout
ACCEPTANCE_LINES = []


@pytest.fixture
def mid_cavity():
    return make_cavity(0.9, 0.9)


@pytest.fixture
def mid_gain(mid_cavity):
    return make_gain(mid_cavity, fraction=0.5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from pathlib import Path

import pytest

from patternlab import toydata

DATA = Path(__file__).parent / "data"

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def baskets():
    return toydata.baskets()


@pytest.fixture
def qbaskets():
    return toydata.quantified_baskets()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

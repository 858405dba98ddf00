from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

BOX_A = [[2, 0, -1, 0], [0, 2, 0, -1]]
BOX_C = [3, 3, 0, 0]


def F(*args):
    return Fraction(*args)


def vec(*values):
    return tuple(Fraction(v) for v in values)


@pytest.fixture
def data_dir():
    return DATA


# acceptance criteria report their verdicts here; printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

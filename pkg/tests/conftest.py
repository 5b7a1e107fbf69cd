from pathlib import Path

import pytest

from ghostslopes.dimdata import load_table
from ghostslopes.verify import ingest_slopes

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def table1():
    return load_table(FIXTURES / "table1.json")


@pytest.fixture
def up5_k7():
    return ingest_slopes(FIXTURES / "table1_up5_k7.json")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

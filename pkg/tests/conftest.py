import pytest

from goldbach_lab.goldbach import goldbach_convolution, goldbach_direct
from goldbach_lab.sieve import build_mangoldt_table

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def table_small():
    return build_mangoldt_table(10**4 + 2)


@pytest.fixture(scope="session")
def table_1e6():
    return build_mangoldt_table(10**6)


@pytest.fixture(scope="session")
def direct_1e4(table_small):
    return goldbach_direct(10**4, table_small)


@pytest.fixture(scope="session")
def conv_1e4(table_small):
    return goldbach_convolution(10**4, table_small)


@pytest.fixture(scope="session")
def conv_1e6(table_1e6):
    return goldbach_convolution(10**6, table_1e6)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

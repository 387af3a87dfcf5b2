from fractions import Fraction

import pytest

from staircase import SingularFunction, load_spec

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def midpoint():
    return SingularFunction(load_spec("midpoint"))


@pytest.fixture(scope="session")
def endpoints():
    return SingularFunction(load_spec("endpoints"))


@pytest.fixture(scope="session")
def cantor_chain():
    return SingularFunction(load_spec("cantor-chain"))


@pytest.fixture(scope="session")
def dense():
    return SingularFunction(load_spec("rationals-dense"))


@pytest.fixture(scope="session")
def midpoint_dense():
    return SingularFunction(load_spec("midpoint", densify=True))


def F(*args):
    return Fraction(*args)

"""Shared rings, ideals and modules for the test suite."""

import pytest

from mgreg.grading import Grading
from mgreg.linalg import Field
from mgreg.ring import MonomialIdeal, Presentation, free_module, quotient

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])


@pytest.fixture(scope="session")
def bigraded():
    return Grading.standard([2, 2])


@pytest.fixture(scope="session")
def field():
    return Field()


@pytest.fixture(scope="session")
def m_xy():
    """B = (X0, X1) cap (Y0, Y1)."""
    return MonomialIdeal([(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)])


@pytest.fixture(scope="session")
def r_plus():
    return MonomialIdeal.coordinate([0, 1, 2, 3], 4)


@pytest.fixture(scope="session")
def ring(bigraded, field):
    return free_module(bigraded, field, [(0, 0)])


@pytest.fixture(scope="session")
def ci(bigraded, field):
    """R/(X0X1, Y0Y1)."""
    return quotient(bigraded, field, [{(1, 1, 0, 0): 1}, {(0, 0, 1, 1): 1}])


@pytest.fixture(scope="session")
def f1(bigraded, field):
    return quotient(bigraded, field, [{(1, 0, 1, 0): 1}])


@pytest.fixture(scope="session")
def f2(bigraded, field):
    return Presentation(bigraded, field, [(0, 0)], [(1, 1)], {(0, 0): {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1}})

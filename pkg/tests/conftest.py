from __future__ import annotations

import pytest

from soergel.coxeter import INF, CoxeterMatrix
from soergel.polyring import CartanRealization

S, R = 0, 1


def dihedral(m) -> CartanRealization:
    return CartanRealization.default(CoxeterMatrix.dihedral(m))


def a3() -> CartanRealization:
    cm = CoxeterMatrix.from_orders(3, {(0, 1): 3, (1, 2): 3, (0, 2): 2})
    return CartanRealization.default(cm)


@pytest.fixture(scope="session")
def A2():
    return dihedral(3)


@pytest.fixture(scope="session")
def B2():
    return dihedral(4)


@pytest.fixture(scope="session")
def G2():
    return dihedral(6)


@pytest.fixture(scope="session")
def A1xA1():
    return dihedral(2)


@pytest.fixture(scope="session")
def Ainf():
    return dihedral(INF)


@pytest.fixture(scope="session")
def A3():
    return a3()


# -- acceptance report ---------------------------------------------------------------
# test_acceptance records one line per criterion here; the lines are printed in the
# terminal summary so they show up without ``-s``.

ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])

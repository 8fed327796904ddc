import sys
from pathlib import Path

import numpy as np
import pytest

from ttgeom.homalg import standard_monomials
from ttgeom.modrep import elementary_abelian


def random_homogeneous(ring, degree, rng):
    """Nonzero random combination of the standard monomials of ``degree``."""
    mons = standard_monomials(ring, degree)
    while True:
        f = ring.zero()
        for m in mons:
            f = f + ring.monomial(m, int(rng.integers(ring.p)))
        if f:
            return f


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def v22():
    return elementary_abelian(2, 2)


@pytest.fixture(scope="session")
def v32():
    return elementary_abelian(3, 2)


@pytest.fixture(scope="session")
def datadir():
    return Path(__file__).parent / "data"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

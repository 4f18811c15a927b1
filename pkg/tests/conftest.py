import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ribbongraph import parse  # noqa: E402

ANNULUS = "C1: 1+ 1+"
MOEBIUS = "C1: 1+ 1-"
PATH = "C1: 1+\nC2: 1-"
TORUS = "C1: 1+ 2+ 1+ 2+"
THETA = "C1: 1+ 2+ 3+\nC2: 3+ 2+ 1+"


@pytest.fixture
def annulus():
    return parse(ANNULUS)


@pytest.fixture
def moebius():
    return parse(MOEBIUS)


@pytest.fixture
def path():
    return parse(PATH)


@pytest.fixture
def torus():
    return parse(TORUS)


@pytest.fixture
def theta():
    return parse(THETA)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # lets fixtures see whether the test body passed
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep

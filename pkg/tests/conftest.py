import numpy as np
import pytest

from whichpath.doubleslit import SlitGeometry
from whichpath.scattering import ScatterGeometry


@pytest.fixture
def geom():
    # 10 um slits, 50 um apart, 0.5 um light, screen 10 cm away
    return SlitGeometry(w=10.0, d=50.0, lambda0=0.5, L=1e5)


@pytest.fixture
def scatter_geom():
    return ScatterGeometry(d=5.0, lambda0=0.5, r0=1e4)


@pytest.fixture
def rng():
    return np.random.default_rng(20221003)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep

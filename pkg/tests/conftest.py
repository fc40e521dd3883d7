import numpy as np
import pytest

from fdehat import make_grid


@pytest.fixture(params=["ghf", "mhf"])
def kind(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20191217)


def grid_for(kind, n, tau=1.0):
    return make_grid(tau, n, kind)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])

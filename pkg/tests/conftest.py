import json
from pathlib import Path

import numpy as np
import pytest

from quantmarket import (EvolutionParams, GaussianSpec, Grid, Potential,
                         gaussian_state, integrate_tdse)

DATA = Path(__file__).parent / "data"
FIGURE_TIMES = [0, 1800, 3600, 7200, 14400, 28800]


@pytest.fixture
def rng():
    return np.random.default_rng(20100)


@pytest.fixture(scope="session")
def grid10():
    return Grid(10)


@pytest.fixture(scope="session")
def figure_bars():
    return json.loads((DATA / "figure_bars.json").read_text())


def figure2_run(dt=1.0, method="unitary-midpoint", times=FIGURE_TIMES):
    grid = Grid(10)
    psi0 = gaussian_state(GaussianSpec(0.2, grid))
    params = EvolutionParams(mu=1.0, beta=0.1, omega=1e-4, dt=dt, method=method)
    return integrate_tdse(grid, params, Potential.from_params(params), psi0, times)


@pytest.fixture(scope="session")
def fig2_traj():
    return figure2_run()


_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _ACCEPTANCE:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")

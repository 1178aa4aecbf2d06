import numpy as np
import pytest

from spinvalve.valve_model import SpinState, Statistics, ValveParams

# filled by test_acceptance.py: (criterion, passed, detail)
ACCEPTANCE_LINES = []


@pytest.fixture
def silicon():
    return ValveParams.silicon()


def random_params(rng, statistics=Statistics.SPIN, **overrides):
    """Draw from the ranges used for analytic/numeric cross-checks."""
    kw = dict(
        t=rng.uniform(0.01, 0.3),
        omega=rng.uniform(0.01, 0.3),
        big_b=rng.uniform(-3, 3),
        alpha=rng.uniform(0, 0.5),
        n_left=rng.uniform(0, 1),
        n_right=rng.uniform(0, 1),
        statistics=statistics,
        qubit=SpinState.DOWN,
    )
    kw.update(overrides)
    return ValveParams(**kw)


@pytest.fixture
def rng():
    return np.random.default_rng(20040501)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")

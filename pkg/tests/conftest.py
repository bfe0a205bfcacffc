import numpy as np
import pytest

from susyd.deuteron import calibrate
from susyd.hulthen import HulthenPotential
from susyd.solver import RadialProblem, solve_bound_states
from susyd.susy import PartnerPotential

CASE_V0 = 6.7784
CASE_KAPPA = 2.8892
WINDOW = (-16.0, -1e-6)


@pytest.fixture(scope="session")
def case_calibration():
    return calibrate(-2.22456614, 3.0)


@pytest.fixture(scope="session")
def hulthen_oracle():
    """Oracle spectra keyed by V0, computed once per session."""
    cache = {}

    def get(V0):
        if V0 not in cache:
            cache[V0] = solve_bound_states(RadialProblem(HulthenPotential(V0)), WINDOW, 5)
        return cache[V0]

    return get


@pytest.fixture(scope="session")
def partner_oracle():
    return solve_bound_states(RadialProblem(PartnerPotential(CASE_KAPPA), 2.0), WINDOW, 5)


def fd_second_derivative(f, x, h):
    """Sixth-order central difference, used as an independent check."""
    return (
        2 * f(x - 3 * h) - 27 * f(x - 2 * h) + 270 * f(x - h) - 490 * f(x)
        + 270 * f(x + h) - 27 * f(x + 2 * h) + 2 * f(x + 3 * h)
    ) / (180 * h * h)


def sign_changes(values):
    s = np.sign(values[values != 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion and echo it."""

    def record(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

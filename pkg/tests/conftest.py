import numpy as np
import pytest

from pcmaxioms import build_matrix

# Worked example with one outlying judgment (a_14 = 16) and its consistified stages.
EXAMPLE_41 = [[1, 1, 1, 16], [1, 1, 1, 1], [1, 1, 1, 1], [1 / 16, 1, 1, 1]]
EXAMPLE_41_STEP_34 = [[1, 1, 2, 8], [1, 1, 1, 1], [1 / 2, 1, 1, 2], [1 / 8, 1, 1 / 2, 1]]
EXAMPLE_41_FINAL = [[1, 2, 2, 4], [1 / 2, 1, 1, 2], [1 / 2, 1, 1, 2], [1 / 4, 1 / 2, 1 / 2, 1]]

# EM counterexample pair: PROP32_B is PROP32_A after triad (1,2,4), alpha = 2.
PROP32_A = [[1, 1, 1, 8], [1, 1, 1, 1], [1, 1, 1, 1], [1 / 8, 1, 1, 1]]
PROP32_B = [[1, 2, 1, 4], [1 / 2, 1, 1, 2], [1, 1, 1, 1], [1 / 4, 1 / 2, 1, 1]]
PROP32_EM_A = [0.4269, 0.2182, 0.2182, 0.1367]
PROP32_EM_B = [0.3941, 0.2256, 0.2389, 0.1413]


@pytest.fixture
def example41():
    return build_matrix(EXAMPLE_41)


@pytest.fixture
def prop32():
    return build_matrix(PROP32_A), build_matrix(PROP32_B)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_acceptance_results = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")

import pytest

from levy_expfun import ExpJumpSubordinator, GeometricCompoundPoisson

# Benchmark parameters used throughout the simulation-study tests.
EX1 = dict(c=1.8, a=0.7, b=0.2)
EX2 = dict(q=0.5, lam=1.0, alpha=0.1)

# One line per acceptance criterion, printed after the test run so the
# verdicts survive pytest's output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def exp_jump():
    return ExpJumpSubordinator(**EX1)


@pytest.fixture(scope="session")
def exp_jump_driftless():
    return ExpJumpSubordinator(c=0.0, a=0.7, b=0.2)


@pytest.fixture(scope="session")
def geom_cpp():
    return GeometricCompoundPoisson(**EX2)

import functools
import math

import pytest

from dacdist import solver

SQRT2_Q = 1 / math.sqrt(2)
GOLDEN_Q = (math.sqrt(5) - 1) / 2


@functools.lru_cache(maxsize=None)
def solved(q, N=100_000, delta=None):
    """Converged numeric solution, shared across test modules."""
    if delta is None:
        delta = solver.default_delta(q)
    return solver.solve(q, solver.SolverConfig(N=N, delta=delta))


@pytest.fixture(scope="session")
def solution():
    return solved


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import itertools

import pytest

from prwalk.model import ModelParams

GRID_VALUES = (0.1, 0.3, 0.5, 0.7, 0.9)
PARAM_GRID = [ModelParams(a, b) for a, b in itertools.product(GRID_VALUES, GRID_VALUES)]

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=PARAM_GRID, ids=lambda p: f"{p.eps_R}-{p.eps_L}")
def grid_params(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import numpy as np
import pytest
from hypothesis import settings

from rabiwall import potential as pot

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

PARAM_SETS = [(2.0, 0.6), (3.0, 1.2), (4.0, 0.5), (2.5, 0.7), (3.5, 1.2)]


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def p2():
    return pot.validate_params(2.0, 0.6)


# Filled by the acceptance module: criterion -> (passed, detail).
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

import numpy as np
import pytest

from elko_kit import poincare as pc


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def momenta(rng):
    return pc.sample_momenta(rng, 40, 1.0)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

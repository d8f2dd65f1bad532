import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

import helpers  # noqa: E402


@pytest.fixture
def fig1():
    return helpers.fig1()


@pytest.fixture
def fig5():
    return helpers.fig5()


@pytest.fixture
def fig3():
    return helpers.fig3()


def pytest_terminal_summary(terminalreporter):
    if helpers.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in helpers.ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

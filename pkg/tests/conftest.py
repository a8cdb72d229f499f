import json
from pathlib import Path

import pytest

from kappa_triple.algebra import GridSpec
from kappa_triple.config import RunConfig
from kappa_triple.family import TestFunctionFamily

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def oracles():
    return json.loads((DATA / "oracles.json").read_text())


@pytest.fixture(scope="session")
def grid():
    return GridSpec(lam=0.5)


@pytest.fixture(scope="session")
def fixtures(grid):
    return TestFunctionFamily(grid, seed=3).sample(4)


@pytest.fixture(scope="session")
def default_config():
    return RunConfig().validate()


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one verdict line per acceptance criterion for the terminal summary."""
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corp import ForecastDataset  # noqa: E402


def random_instance(rng, max_n=12, grid=0.05):
    n = int(rng.integers(1, max_n + 1))
    steps = int(round(1 / grid))
    x = rng.integers(0, steps + 1, n) * grid
    y = rng.integers(0, 2, n)
    return ForecastDataset(x, y)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def three_point():
    return ForecastDataset.from_arrays([0.2, 0.4, 0.6], [1, 0, 1])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)

import sys

import numpy as np
import pytest

from tofsign.depth_io import DepthFrame


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def frame_from_points(width, height, points):
    """Frame of zeros with ``{(x, y): intensity}`` set."""
    arr = np.zeros((height, width), dtype=np.uint8)
    for (x, y), v in points.items():
        arr[y, x] = v
    return DepthFrame(arr)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results:
        terminalreporter.write_line(line)

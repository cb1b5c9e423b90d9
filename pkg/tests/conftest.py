import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from blochkit.grid import DiskGrid  # noqa: E402


@pytest.fixture(scope="session")
def grid():
    return DiskGrid.default()


@pytest.fixture(scope="session")
def coarse():
    """Cheaper grid for structural tests that do not pin values to 1e-6."""
    return DiskGrid.default(rings=16, angles=128, refine=2)

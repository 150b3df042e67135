import pytest

from campanato.analysis.grids import GridParams

from .testutil import SMALL_GRID


@pytest.fixture
def small_grid():
    return GridParams(**SMALL_GRID)


@pytest.fixture
def default_grid():
    return GridParams()

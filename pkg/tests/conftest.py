import numpy as np
import pytest

from su2kit import haar


@pytest.fixture(scope="session")
def grid_small():
    """Shared 24x16x32 SU(2) quadrature grid (cheap, inversion-closed)."""
    return haar.build_grid(24, 16, 32, "SU2")


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)

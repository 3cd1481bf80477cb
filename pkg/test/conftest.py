import logging
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))
sys.path.insert(0, str(Path(__file__).parent))

from ldgdiffusion.mesh import domain_square, generate_grid_data

SQ3 = np.sqrt(3.0)

# two equilateral triangles of side 2 sharing the edge (0,-1)-(0,1)
TWO_TRIANGLE_COORDS = [(0.0, -1.0), (SQ3, 0.0), (0.0, 1.0), (-SQ3, 0.0)]
TWO_TRIANGLE_V0T = [[3, 0, 2], [0, 1, 2]]


@pytest.fixture
def two_triangles():
    return generate_grid_data(TWO_TRIANGLE_COORDS, TWO_TRIANGLE_V0T)


@pytest.fixture
def two_triangles_tagged(two_triangles):
    """Boundary edges get IDs 1 and 2 alternately in edge order."""
    id_e = np.zeros(two_triangles.num_e, dtype=np.int64)
    boundary = np.flatnonzero(two_triangles.is_boundary_e)
    id_e[boundary] = 1 + np.arange(len(boundary)) % 2
    return two_triangles.with_boundary_ids(id_e)


@pytest.fixture
def unit_triangle():
    return generate_grid_data([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [[0, 1, 2]])


@pytest.fixture
def square_half():
    return domain_square(0.5)


@pytest.fixture(autouse=True)
def package_logger():
    """configure_logging detaches the package logger from the root; undo it."""
    logger = logging.getLogger("ldgdiffusion")
    yield logger
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True

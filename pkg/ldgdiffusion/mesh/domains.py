import math

import numpy as np

from ldgdiffusion.constants import (
    SQUARE_EAST_ID,
    SQUARE_NORTH_ID,
    SQUARE_SOUTH_ID,
    SQUARE_WEST_ID,
)
from ldgdiffusion.exceptions import MeshError
from ldgdiffusion.mesh.grid import generate_grid_data


def domain_square(h_max):
    """
    Friedrichs-Keller triangulation of the unit square with ceil(1/h_max)
    edges per side. Boundary IDs: 1 south, 2 east, 3 north, 4 west.
    """
    if not h_max > 0:
        raise MeshError(f"h_max must be positive, got {h_max}")
    dim = max(math.ceil(1.0 / h_max - 1e-12), 1)

    j, i = np.meshgrid(np.arange(dim + 1), np.arange(dim + 1), indexing="ij")
    coord_v = np.stack([j.ravel() / dim, i.ravel() / dim], axis=1)

    jj, ii = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    base = (ii + jj * (dim + 1)).ravel()
    lower = np.stack([base, base + dim + 1, base + 1], axis=1)
    upper = np.stack([base + dim + 1, base + dim + 2, base + 1], axis=1)
    mesh = generate_grid_data(coord_v, np.concatenate([lower, upper]))

    x, y = mesh.bary_e[:, 0], mesh.bary_e[:, 1]
    id_e = np.zeros(mesh.num_e, dtype=np.int64)
    tol = 1e-12
    id_e[np.abs(y) < tol] = SQUARE_SOUTH_ID
    id_e[np.abs(x - 1) < tol] = SQUARE_EAST_ID
    id_e[np.abs(y - 1) < tol] = SQUARE_NORTH_ID
    id_e[np.abs(x) < tol] = SQUARE_WEST_ID
    return mesh.with_boundary_ids(id_e)


def refine_uniform(mesh):
    """
    Red refinement: every triangle is split into four congruent children
    through its edge midpoints. Child boundary edges inherit the ID of the
    parent edge they lie on.
    """
    num_v = mesh.num_v
    coord_v = np.concatenate([mesh.coord_v, mesh.bary_e])
    a = mesh.v0t
    # midpoint vertex of local edge n
    m = num_v + mesh.e0t
    children = np.concatenate(
        [
            np.stack([a[:, 0], m[:, 2], m[:, 1]], axis=1),
            np.stack([m[:, 2], a[:, 1], m[:, 0]], axis=1),
            np.stack([m[:, 1], m[:, 0], a[:, 2]], axis=1),
            np.stack([m[:, 0], m[:, 1], m[:, 2]], axis=1),
        ]
    )
    # children of triangle k are 4k..4k+3
    num_t = mesh.num_t
    children = children.reshape(4, num_t, 3).transpose(1, 0, 2).reshape(-1, 3)
    fine = generate_grid_data(coord_v, children)

    # a child edge on the parent boundary joins an old vertex and a midpoint
    low, high = fine.v0e[:, 0], fine.v0e[:, 1]
    half_edge = (low < num_v) & (high >= num_v)
    id_e = np.zeros(fine.num_e, dtype=np.int64)
    id_e[half_edge] = mesh.id_e[high[half_edge] - num_v]
    id_e[~fine.is_boundary_e] = 0
    return fine.with_boundary_ids(id_e)

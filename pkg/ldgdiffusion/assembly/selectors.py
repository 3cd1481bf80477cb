"""
Edge selectors: K x 3 boolean masks of (triangle, local edge) slots.
"""
import numpy as np

from ldgdiffusion.constants import DIRICHLET_TAG, INTERIOR_EDGE_ID, NEUMANN_TAG
from ldgdiffusion.exceptions import BoundaryConditionError, ShapeMismatchError


def interior_selector(mesh):
    return (mesh.id_e0t == INTERIOR_EDGE_ID) & ~mesh.is_boundary_e0t


def boundary_selector(mesh, ids):
    ids = list(ids)
    return np.isin(mesh.id_e0t, ids) & mesh.is_boundary_e0t if ids else np.zeros(
        (mesh.num_t, 3), dtype=bool
    )


def partition_selectors(mesh, boundary_map):
    """
    Splits all (k, n) slots into interior, Dirichlet and Neumann selectors.

    :param boundary_map: dict boundary ID -> "dirichlet" | "neumann"
    :return: (interior, dirichlet, neumann)
    """
    present = sorted(int(i) for i in np.unique(mesh.id_e[mesh.is_boundary_e]))
    if INTERIOR_EDGE_ID in present:
        raise BoundaryConditionError(
            "mesh has boundary edges without a boundary ID; tag them in the mesh file"
        )
    unmapped = [i for i in present if i not in boundary_map]
    if unmapped:
        raise BoundaryConditionError(f"boundary IDs {unmapped} have no boundary condition")
    dirichlet_ids = [i for i, kind in boundary_map.items() if kind == DIRICHLET_TAG]
    neumann_ids = [i for i, kind in boundary_map.items() if kind == NEUMANN_TAG]
    return (
        interior_selector(mesh),
        boundary_selector(mesh, dirichlet_ids),
        boundary_selector(mesh, neumann_ids),
    )


def check_selector(mesh, selector, name="selector"):
    selector = np.asarray(selector, dtype=bool)
    if selector.shape != (mesh.num_t, 3):
        raise ShapeMismatchError(
            f"{name} has shape {selector.shape}, expected ({mesh.num_t}, 3)"
        )
    return selector

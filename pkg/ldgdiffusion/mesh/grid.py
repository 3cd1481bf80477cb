"""
Triangulation data structure with the topological and geometric lists used by
the assembly routines.

Conventions (all indices 0-based):
  - v0t rows are counter-clockwise.
  - local edge n of a triangle lies opposite local vertex n and runs from local
    vertex (n+1) % 3 to (n+2) % 3.
  - edges are numbered by sorting their (min, max) vertex pairs.
  - t0e[:, 1] holds NO_TRIANGLE for boundary edges.
"""
import dataclasses
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp

from ldgdiffusion.constants import INTERIOR_EDGE_ID, NO_TRIANGLE
from ldgdiffusion.exceptions import MeshError, MeshOrientationError, MeshTopologyError

logger = logging.getLogger(__name__)

_START = np.array([1, 2, 0])
_END = np.array([2, 0, 1])


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Mesh:
    coord_v: np.ndarray
    v0t: np.ndarray
    e0t: np.ndarray
    v0e: np.ndarray
    t0e: np.ndarray
    n0e: np.ndarray
    area_t: np.ndarray
    area_e: np.ndarray
    bary_t: np.ndarray
    bary_e: np.ndarray
    nu_e: np.ndarray
    nu_e0t: np.ndarray
    b: np.ndarray
    mark_e0te0t: Tuple[Tuple[sp.csr_matrix, ...], ...]
    id_e: np.ndarray

    @property
    def num_t(self):
        return self.v0t.shape[0]

    @property
    def num_e(self):
        return self.v0e.shape[0]

    @property
    def num_v(self):
        return self.coord_v.shape[0]

    @property
    def area_e0t(self):
        return self.area_e[self.e0t]

    @property
    def id_e0t(self):
        return self.id_e[self.e0t]

    @property
    def coord_v0t(self):
        """(K, 3, 2) vertex coordinates per triangle."""
        return self.coord_v[self.v0t]

    @property
    def bary_e0t(self):
        return self.bary_e[self.e0t]

    @property
    def is_boundary_e(self):
        return self.t0e[:, 1] == NO_TRIANGLE

    @property
    def is_boundary_e0t(self):
        return self.is_boundary_e[self.e0t]

    def with_boundary_ids(self, id_e):
        id_e = np.asarray(id_e, dtype=np.int64)
        if id_e.shape != (self.num_e,):
            raise MeshError(
                f"boundary ID array has shape {id_e.shape}, expected ({self.num_e},)"
            )
        tagged_interior = (id_e != INTERIOR_EDGE_ID) & ~self.is_boundary_e
        if tagged_interior.any():
            raise MeshError(
                f"interior edges {np.flatnonzero(tagged_interior).tolist()} "
                "cannot carry a boundary ID"
            )
        return dataclasses.replace(self, id_e=_frozen(id_e))

    def map_reference(self, x1_hat, x2_hat):
        """
        Applies F_k(x^) = B_k x^ + a_k1 for every triangle.
        :param x1_hat: reference coordinates, shape (R,)
        :return: physical coordinates X1, X2 of shape (K, R)
        """
        x1_hat = np.asarray(x1_hat, dtype=float)
        x2_hat = np.asarray(x2_hat, dtype=float)
        a1 = self.coord_v[self.v0t[:, 0]]
        x1 = (
            np.outer(self.b[:, 0, 0], x1_hat)
            + np.outer(self.b[:, 0, 1], x2_hat)
            + a1[:, [0]]
        )
        x2 = (
            np.outer(self.b[:, 1, 0], x1_hat)
            + np.outer(self.b[:, 1, 1], x2_hat)
            + a1[:, [1]]
        )
        return x1, x2

    def interior_pairs(self, n_minus, n_plus):
        """
        Triangle pairs (k-, k+) whose local edges n_minus and n_plus coincide,
        in row-major order. Local edges are 0-based here.
        """
        coo = self.mark_e0te0t[n_minus][n_plus].tocoo()
        order = np.lexsort((coo.col, coo.row))
        return coo.row[order].astype(np.int64), coo.col[order].astype(np.int64)

    def check_invariants(self, tol=1e-12):
        det_b = self.b[:, 0, 0] * self.b[:, 1, 1] - self.b[:, 0, 1] * self.b[:, 1, 0]
        if not np.allclose(det_b, 2 * self.area_t, rtol=1e-12, atol=0.0):
            raise MeshError("det(B_k) differs from 2 |T_k|")
        if (self.area_t <= 0).any():
            k = int(np.flatnonzero(self.area_t <= 0)[0])
            raise MeshOrientationError(f"triangle {k} has non-positive area", triangle=k)

        if not np.allclose(np.linalg.norm(self.nu_e0t, axis=2), 1.0, rtol=0, atol=tol):
            raise MeshError("edge normals are not unit vectors")
        outward = np.einsum(
            "knm,knm->kn", self.nu_e0t, self.bary_e0t - self.bary_t[:, None, :]
        )
        if (outward <= 0).any():
            raise MeshError("an edge normal points into its triangle")

        interior = ~self.is_boundary_e
        k_minus, n_minus = self.t0e[interior, 0], self.n0e[interior, 0]
        k_plus, n_plus = self.t0e[interior, 1], self.n0e[interior, 1]
        if not np.allclose(
            self.nu_e0t[k_minus, n_minus], -self.nu_e0t[k_plus, n_plus], rtol=0, atol=tol
        ):
            raise MeshError("normals of an interior edge are not opposite")

        num_interior = int(interior.sum())
        if 3 * self.num_t != 2 * num_interior + (self.num_e - num_interior):
            raise MeshTopologyError("edge counts are inconsistent with 3 K slots")

        num_marks = sum(self.mark_e0te0t[i][j].nnz for i in range(3) for j in range(3))
        if num_marks != 2 * num_interior:
            raise MeshTopologyError("neighbour marks do not cover every interior edge twice")

    def summary(self):
        return {
            "num_t": self.num_t,
            "num_e": self.num_e,
            "num_v": self.num_v,
            "num_boundary_e": int(self.is_boundary_e.sum()),
            "area": float(self.area_t.sum()),
            "h_max": float(self.area_e.max()) if self.num_e else 0.0,
            "boundary_ids": sorted(int(i) for i in np.unique(self.id_e) if i != 0),
        }


def _validate_input(coord_v, v0t):
    if coord_v.ndim != 2 or coord_v.shape[1] != 2:
        raise MeshError(f"vertex coordinates must have shape (V, 2), got {coord_v.shape}")
    if v0t.ndim != 2 or v0t.shape[1] != 3:
        raise MeshError(f"triangle list must have shape (K, 3), got {v0t.shape}")
    if v0t.shape[0] == 0:
        raise MeshError("mesh has no triangles")
    if not np.isfinite(coord_v).all():
        raise MeshError("vertex coordinates must be finite")
    bad = (v0t < 0) | (v0t >= coord_v.shape[0])
    if bad.any():
        k = int(np.flatnonzero(bad.any(axis=1))[0])
        raise MeshError(
            f"triangle {k} references vertex index outside 0..{coord_v.shape[0] - 1}"
        )
    duplicate = (
        (v0t[:, 0] == v0t[:, 1]) | (v0t[:, 1] == v0t[:, 2]) | (v0t[:, 0] == v0t[:, 2])
    )
    if duplicate.any():
        k = int(np.flatnonzero(duplicate)[0])
        raise MeshError(f"triangle {k} repeats a vertex")


def _signed_areas(coord_v, v0t):
    a1, a2, a3 = coord_v[v0t[:, 0]], coord_v[v0t[:, 1]], coord_v[v0t[:, 2]]
    return 0.5 * (
        (a2[:, 0] - a1[:, 0]) * (a3[:, 1] - a1[:, 1])
        - (a3[:, 0] - a1[:, 0]) * (a2[:, 1] - a1[:, 1])
    )


def generate_grid_data(coord_v, v0t):
    """
    Builds a Mesh from vertex coordinates and counter-clockwise triangles.

    Args:
        coord_v: (V, 2) vertex coordinates
        v0t: (K, 3) 0-based vertex indices per triangle

    Returns:
        Mesh with all boundary IDs set to 0
    """
    coord_v = np.array(coord_v, dtype=float)
    v0t = np.array(v0t, dtype=np.int64)
    _validate_input(coord_v, v0t)
    num_t = v0t.shape[0]

    area = _signed_areas(coord_v, v0t)
    extent = coord_v.max(axis=0) - coord_v.min(axis=0)
    tol = 1e-14 * float(extent[0] * extent[1])
    not_positive = area <= tol
    if not_positive.any():
        k = int(np.flatnonzero(not_positive)[0])
        kind = "clockwise" if area[k] < -tol else "degenerate"
        raise MeshOrientationError(
            f"triangle {k} is {kind} (signed area {area[k]:.3e})", triangle=k
        )

    # directed local edges, slot = 3 k + n
    start = v0t[:, _START].reshape(-1)
    end = v0t[:, _END].reshape(-1)
    keys = np.stack([np.minimum(start, end), np.maximum(start, end)], axis=1)
    v0e, edge_of_slot = np.unique(keys, axis=0, return_inverse=True)
    edge_of_slot = np.asarray(edge_of_slot).reshape(-1)
    num_e = v0e.shape[0]
    e0t = edge_of_slot.reshape(num_t, 3)

    counts = np.bincount(edge_of_slot, minlength=num_e)
    if (counts > 2).any():
        e = int(np.flatnonzero(counts > 2)[0])
        raise MeshTopologyError(
            f"edge ({v0e[e, 0]}, {v0e[e, 1]}) is shared by {counts[e]} triangles"
        )
    order = np.argsort(edge_of_slot, kind="stable")
    first = np.concatenate([[0], np.cumsum(counts)[:-1]])
    first_slot = order[first]
    t0e = np.full((num_e, 2), NO_TRIANGLE, dtype=np.int64)
    n0e = np.full((num_e, 2), NO_TRIANGLE, dtype=np.int64)
    t0e[:, 0], n0e[:, 0] = first_slot // 3, first_slot % 3
    shared = np.flatnonzero(counts == 2)
    second_slot = order[first[shared] + 1]
    t0e[shared, 1], n0e[shared, 1] = second_slot // 3, second_slot % 3

    if (start[first_slot[shared]] != end[second_slot]).any():
        e = int(shared[np.flatnonzero(start[first_slot[shared]] != end[second_slot])[0]])
        raise MeshTopologyError(
            f"triangles {t0e[e, 0]} and {t0e[e, 1]} traverse edge {e} in the same direction"
        )

    direction = coord_v[end] - coord_v[start]
    area_e = np.linalg.norm(coord_v[v0e[:, 1]] - coord_v[v0e[:, 0]], axis=1)
    length = area_e[edge_of_slot]
    nu_e0t = (np.stack([direction[:, 1], -direction[:, 0]], axis=1) / length[:, None])
    nu_e0t = nu_e0t.reshape(num_t, 3, 2)
    global_dir = coord_v[v0e[:, 1]] - coord_v[v0e[:, 0]]
    nu_e = np.stack([global_dir[:, 1], -global_dir[:, 0]], axis=1) / area_e[:, None]

    corners = coord_v[v0t]
    b = np.stack([corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0]], axis=2)

    marks = [[None] * 3 for _ in range(3)]
    k_minus, n_minus = t0e[shared, 0], n0e[shared, 0]
    k_plus, n_plus = t0e[shared, 1], n0e[shared, 1]
    for i in range(3):
        for j in range(3):
            rows = np.concatenate(
                [k_minus[(n_minus == i) & (n_plus == j)], k_plus[(n_plus == i) & (n_minus == j)]]
            )
            cols = np.concatenate(
                [k_plus[(n_minus == i) & (n_plus == j)], k_minus[(n_plus == i) & (n_minus == j)]]
            )
            mark = sp.coo_matrix(
                (np.ones(len(rows), dtype=bool), (rows, cols)), shape=(num_t, num_t)
            ).tocsr()
            mark.sort_indices()
            marks[i][j] = mark

    mesh = Mesh(
        coord_v=_frozen(coord_v),
        v0t=_frozen(v0t),
        e0t=_frozen(e0t),
        v0e=_frozen(v0e),
        t0e=_frozen(t0e),
        n0e=_frozen(n0e),
        area_t=_frozen(area),
        area_e=_frozen(area_e),
        bary_t=_frozen(corners.mean(axis=1)),
        bary_e=_frozen(0.5 * (coord_v[v0e[:, 0]] + coord_v[v0e[:, 1]])),
        nu_e=_frozen(nu_e),
        nu_e0t=_frozen(nu_e0t),
        b=_frozen(b),
        mark_e0te0t=tuple(tuple(row) for row in marks),
        id_e=_frozen(np.zeros(num_e, dtype=np.int64)),
    )
    mesh.check_invariants()
    logger.debug("built mesh with %d triangles, %d edges", mesh.num_t, mesh.num_e)
    return mesh

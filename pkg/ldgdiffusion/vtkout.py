"""
VTK XML unstructured grid output. Every triangle contributes its own points,
so discontinuous fields are shown without averaging.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import quoteattr

import numpy as np

from ldgdiffusion.constants import VTK_LINEAR_TRIANGLE, VTK_QUADRATIC_TRIANGLE
from ldgdiffusion.exceptions import LdgError, ShapeMismatchError

logger = logging.getLogger(__name__)

# sampled order is vertices, midpoints of local edges 1, 2, 3; VTK wants the
# midpoints of (v1 v2), (v2 v3), (v3 v1)
QUADRATIC_PERMUTATION = [0, 1, 2, 5, 3, 4]


@dataclass
class VtuSnapshot:
    mesh: object
    data_lagr: np.ndarray
    var_name: str
    basename: str
    t_lvl: int

    @property
    def nodes_per_cell(self):
        return self.data_lagr.shape[1]

    @property
    def path(self):
        return Path(f"{self.basename}.{self.t_lvl}.vtu")


def _points(mesh, nodes_per_cell):
    corners = mesh.coord_v0t
    if nodes_per_cell == 6:
        midpoints = mesh.bary_e0t[:, [2, 0, 1]]
        corners = np.concatenate([corners, midpoints], axis=1)
    return corners.reshape(-1, 2)


def _format_rows(values, fmt):
    return "\n".join(" ".join(fmt % v for v in row) for row in values)


def write_vtu(snapshot):
    """
    Writes <basename>.<t_lvl>.vtu.
    :return: Path of the written file
    """
    mesh = snapshot.mesh
    data = np.asarray(snapshot.data_lagr, dtype=float)
    if data.ndim != 2 or data.shape[0] != mesh.num_t or data.shape[1] not in (3, 6):
        raise ShapeMismatchError(
            f"Lagrange data must have shape ({mesh.num_t}, 3 or 6), got {data.shape}"
        )
    nodes = data.shape[1]
    cell_type = VTK_LINEAR_TRIANGLE if nodes == 3 else VTK_QUADRATIC_TRIANGLE
    if nodes == 6:
        data = data[:, QUADRATIC_PERMUTATION]
    num_points = mesh.num_t * nodes

    points = np.zeros((num_points, 3))
    points[:, :2] = _points(mesh, nodes)
    connectivity = np.arange(num_points).reshape(mesh.num_t, nodes)
    offsets = nodes * np.arange(1, mesh.num_t + 1)
    name = quoteattr(snapshot.var_name)

    text = "\n".join(
        [
            '<?xml version="1.0"?>',
            '<VTKFile type="UnstructuredGrid" version="0.1" byte_order="LittleEndian" '
            'compressor="vtkZLibDataCompressor">',
            "  <UnstructuredGrid>",
            f'    <Piece NumberOfPoints="{num_points}" NumberOfCells="{mesh.num_t}">',
            "      <Points>",
            '        <DataArray type="Float32" NumberOfComponents="3" format="ascii">',
            _format_rows(points, "%.3e"),
            "        </DataArray>",
            "      </Points>",
            "      <Cells>",
            '        <DataArray type="Int32" Name="connectivity" format="ascii">',
            _format_rows(connectivity, "%d"),
            "        </DataArray>",
            '        <DataArray type="Int32" Name="offsets" format="ascii">',
            _format_rows(offsets[:, None], "%d"),
            "        </DataArray>",
            '        <DataArray type="UInt8" Name="types" format="ascii">',
            _format_rows(np.full((mesh.num_t, 1), cell_type), "%d"),
            "        </DataArray>",
            "      </Cells>",
            f"      <PointData Scalars={name}>",
            f'        <DataArray type="Float32" Name={name} NumberOfComponents="1" format="ascii">',
            _format_rows(data.reshape(-1, 1), "%.3e"),
            "        </DataArray>",
            "      </PointData>",
            "    </Piece>",
            "  </UnstructuredGrid>",
            "</VTKFile>",
            "",
        ]
    )
    path = snapshot.path
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise LdgError(f"cannot write {path}: {e}")
    logger.debug("wrote %s", path)
    return path


def write_mesh_vtu(mesh, basename):
    """Writes the triangle index as a piecewise constant field."""
    data = np.repeat(np.arange(mesh.num_t, dtype=float)[:, None], 3, axis=1)
    return write_vtu(VtuSnapshot(mesh, data, "triangle", basename, 0))


def dump_mesh_report(mesh):
    """Human-readable listing of the mesh lists with 1-based numbering."""
    lines = [
        f"numT = {mesh.num_t}",
        f"numE = {mesh.num_e}",
        f"numV = {mesh.num_v}",
        f"boundary edges = {int(mesh.is_boundary_e.sum())}",
        f"total area = {mesh.area_t.sum():.12g}",
        "",
        "triangles:",
    ]
    for k in range(mesh.num_t):
        v = " ".join(str(i + 1) for i in mesh.v0t[k])
        e = " ".join(str(i + 1) for i in mesh.e0t[k])
        ids = " ".join(str(i) for i in mesh.id_e0t[k])
        nu = " ".join(f"({n[0]:+.6f},{n[1]:+.6f})" for n in mesh.nu_e0t[k])
        lines.append(
            f"  T{k + 1}: V0T=[{v}] E0T=[{e}] idE0T=[{ids}] area={mesh.area_t[k]:.6e} nu={nu}"
        )
    lines.append("")
    lines.append("edges:")
    for e in range(mesh.num_e):
        t_plus = mesh.t0e[e, 1]
        neighbour = "-" if t_plus < 0 else str(t_plus + 1)
        lines.append(
            f"  E{e + 1}: V0E=[{mesh.v0e[e, 0] + 1} {mesh.v0e[e, 1] + 1}] "
            f"T0E=[{mesh.t0e[e, 0] + 1} {neighbour}] idE={mesh.id_e[e]} "
            f"length={mesh.area_e[e]:.6e}"
        )
    return "\n".join(lines) + "\n"

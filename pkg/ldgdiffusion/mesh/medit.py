"""
Reader for the ASCII MEDIT .mesh subset written by common mesh generators:

    MeshVersionFormatted 2
    Dimension 2
    Vertices
    4
    0 0 0
    ...
    Edges
    3
    1 2 7
    ...
    Triangles
    2
    1 2 3 0
    ...
    End

Vertex rows carry 2 or 3 coordinates followed by a reference number; only x
and y are used. Indices are 1-based. The Edges reference becomes the boundary
ID. Sections other than Vertices, Edges and Triangles are skipped.
"""
import logging
from pathlib import Path

import numpy as np

from ldgdiffusion.constants import INTERIOR_EDGE_ID
from ldgdiffusion.exceptions import MeditParseError, MeshError
from ldgdiffusion.mesh.grid import generate_grid_data

logger = logging.getLogger(__name__)

_ROW_WIDTHS = {"Edges": (3,), "Triangles": (4,), "Vertices": (3, 4)}
_HEADER_KEYWORDS = ("MeshVersionFormatted", "Dimension")


class _LineReader:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self):
        """Next non-empty, non-comment line as (line_no, tokens) or None at EOF."""
        while self.pos < len(self.lines):
            self.pos += 1
            content = self.lines[self.pos - 1].split("#", 1)[0].strip()
            if content:
                return self.pos, content.split()
        return None


def _read_count(reader, keyword, keyword_line):
    entry = reader.next()
    if entry is None:
        raise MeditParseError(f"missing count after '{keyword}'", keyword_line)
    line_no, tokens = entry
    if len(tokens) != 1 or not tokens[0].isdigit():
        raise MeditParseError(f"expected a row count for '{keyword}'", line_no)
    return int(tokens[0])


def _read_rows(reader, keyword, count, keyword_line):
    rows = []
    widths = _ROW_WIDTHS.get(keyword)
    for _ in range(count):
        entry = reader.next()
        if entry is None:
            raise MeditParseError(
                f"'{keyword}' declares {count} rows but the file ends after {len(rows)}",
                keyword_line,
            )
        line_no, tokens = entry
        if widths is None:
            continue
        if tokens[0][0].isalpha():
            raise MeditParseError(
                f"'{keyword}' declares {count} rows but only {len(rows)} were found",
                line_no,
            )
        if len(tokens) not in widths:
            raise MeditParseError(
                f"'{keyword}' row has {len(tokens)} values, expected {' or '.join(map(str, widths))}",
                line_no,
            )
        try:
            rows.append([float(v) for v in tokens])
        except ValueError:
            raise MeditParseError(f"non-numeric value in '{keyword}' row", line_no)
    return rows


def parse_medit(text):
    """
    Parses MEDIT text into raw arrays.

    Returns:
        (coord_v, v0t, edge_rows) with 0-based indices; edge_rows is an
        (n, 3) int array of (v1, v2, ref)
    """
    reader = _LineReader(text)
    sections = {}
    while True:
        entry = reader.next()
        if entry is None:
            break
        line_no, tokens = entry
        keyword = tokens[0]
        if keyword == "End":
            break
        if not keyword[0].isalpha():
            raise MeditParseError(f"unexpected data '{' '.join(tokens)}' outside a section", line_no)
        if keyword in _HEADER_KEYWORDS:
            if len(tokens) == 1:
                reader.next()
            continue
        if keyword in sections:
            raise MeditParseError(f"duplicate section '{keyword}'", line_no)
        count = int(tokens[1]) if len(tokens) == 2 and tokens[1].isdigit() else None
        if len(tokens) > 1 and count is None:
            raise MeditParseError(f"malformed section header '{' '.join(tokens)}'", line_no)
        if count is None:
            count = _read_count(reader, keyword, line_no)
        sections[keyword] = (_read_rows(reader, keyword, count, line_no), line_no)

    for required in ("Vertices", "Triangles"):
        if required not in sections:
            raise MeditParseError(f"missing '{required}' section", len(reader.lines))

    vertices, _ = sections["Vertices"]
    coord_v = np.array([row[:2] for row in vertices], dtype=float).reshape(-1, 2)
    triangles, tri_line = sections["Triangles"]
    v0t = np.array([row[:3] for row in triangles], dtype=np.int64).reshape(-1, 3) - 1
    if ((v0t < 0) | (v0t >= len(coord_v))).any():
        raise MeditParseError("triangle references a vertex that does not exist", tri_line)
    edges, edge_line = sections.get("Edges", ([], 0))
    edge_rows = np.array(edges, dtype=np.int64).reshape(-1, 3)
    edge_rows[:, :2] -= 1
    if ((edge_rows[:, :2] < 0) | (edge_rows[:, :2] >= len(coord_v))).any():
        raise MeditParseError("edge references a vertex that does not exist", edge_line)
    return coord_v, v0t, edge_rows


def read_mesh_medit(path):
    """
    Reads a .mesh file. Boundary edges that are not tagged in the Edges
    section keep ID 0 and are reported with a warning.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise MeshError(f"cannot read mesh file {path}: {e}")
    coord_v, v0t, edge_rows = parse_medit(text)
    mesh = generate_grid_data(coord_v, v0t)

    lookup = {(int(a), int(b)): e for e, (a, b) in enumerate(mesh.v0e)}
    id_e = np.zeros(mesh.num_e, dtype=np.int64)
    for v1, v2, ref in edge_rows:
        e = lookup.get((min(v1, v2), max(v1, v2)))
        if e is None:
            logger.warning("tagged edge (%d, %d) is not an edge of the mesh", v1 + 1, v2 + 1)
        elif not mesh.is_boundary_e[e]:
            logger.warning("ignoring tag %d on interior edge (%d, %d)", ref, v1 + 1, v2 + 1)
        else:
            id_e[e] = ref

    untagged = mesh.is_boundary_e & (id_e == INTERIOR_EDGE_ID)
    if untagged.any():
        logger.warning(
            "%d boundary edges of %s have no tag and keep ID 0", int(untagged.sum()), path
        )
    logger.info("read %s: %d vertices, %d triangles", path, mesh.num_v, mesh.num_t)
    return mesh.with_boundary_ids(id_e)

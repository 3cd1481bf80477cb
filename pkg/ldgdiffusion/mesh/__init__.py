from .grid import Mesh, generate_grid_data
from .domains import domain_square, refine_uniform
from .medit import parse_medit, read_mesh_medit
from .sources import (
    MeshSource,
    SquareMeshSource,
    MeditMeshSource,
    create_mesh_source,
)

__all__ = [
    "Mesh",
    "generate_grid_data",
    "domain_square",
    "refine_uniform",
    "parse_medit",
    "read_mesh_medit",
    "MeshSource",
    "SquareMeshSource",
    "MeditMeshSource",
    "create_mesh_source",
]

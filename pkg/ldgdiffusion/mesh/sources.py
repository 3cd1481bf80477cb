import logging
from abc import ABC, abstractmethod
from pathlib import Path

from ldgdiffusion.exceptions import ConfigError
from ldgdiffusion.mesh.domains import domain_square, refine_uniform
from ldgdiffusion.mesh.medit import read_mesh_medit

logger = logging.getLogger(__name__)

SQUARE_SOURCE = "square"


class MeshSource(ABC):
    """Abstract base class for the ways a run obtains its triangulation"""

    def __init__(self, refinements: int = 0):
        if refinements < 0:
            raise ConfigError("mesh.refinements", f"must be >= 0, got {refinements}")
        self.refinements = refinements

    @abstractmethod
    def build_coarse(self):
        """Return the unrefined Mesh"""
        pass

    @abstractmethod
    def describe(self) -> str:
        pass

    def build(self):
        mesh = self.build_coarse()
        for _ in range(self.refinements):
            mesh = refine_uniform(mesh)
        logger.info("%s: %d triangles after %d refinements", self.describe(), mesh.num_t, self.refinements)
        return mesh


class SquareMeshSource(MeshSource):
    def __init__(self, h_max: float, refinements: int = 0):
        super().__init__(refinements)
        if not h_max > 0:
            raise ConfigError("mesh.h_max", f"must be positive, got {h_max}")
        self.h_max = h_max

    def build_coarse(self):
        return domain_square(self.h_max)

    def describe(self):
        return f"unit square (h_max={self.h_max:g})"


class MeditMeshSource(MeshSource):
    def __init__(self, path, refinements: int = 0):
        super().__init__(refinements)
        self.path = Path(path)

    def build_coarse(self):
        return read_mesh_medit(self.path)

    def describe(self):
        return f"MEDIT file {self.path}"


def create_mesh_source(source: str, h_max: float = None, refinements: int = 0) -> MeshSource:
    """
    Factory function to create a mesh source

    Args:
        source: "square" or the path of a .mesh file
        h_max: mesh size bound for the square generator
        refinements: uniform refinement rounds applied after construction

    Returns:
        MeshSource instance
    """
    if source == SQUARE_SOURCE:
        if h_max is None:
            raise ConfigError("mesh.h_max", "required for the square generator")
        return SquareMeshSource(h_max=h_max, refinements=refinements)
    if str(source).endswith(".mesh"):
        return MeditMeshSource(source, refinements=refinements)
    raise ConfigError(
        "mesh.source", f"unknown mesh source '{source}', expected 'square' or a .mesh path"
    )

import logging
import os
import time

from ldgdiffusion.discrete.fields import integral, to_lagrange
from ldgdiffusion.discrete.reftensors import build_ref_tensors
from ldgdiffusion.mesh.sources import create_mesh_source
from ldgdiffusion.simulation.base import Simulation
from ldgdiffusion.system.stepping import solve_stationary
from ldgdiffusion.utils import n_local_from_order
from ldgdiffusion.vtkout import VtuSnapshot, write_vtu

logger = logging.getLogger(__name__)


class StationarySimulation(Simulation):
    """Solves the problem without the time derivative and writes one snapshot."""

    def __init__(self, config, log_dir="output", log_path=None):
        super().__init__(config=config, log_dir=log_dir, log_path=log_path)
        self.spec = config.problem_spec()
        self.n_local = n_local_from_order(config.p)
        self.mesh = None
        self.solution = None
        self.snapshots = []
        self.wall_time = 0.0

    def run(self):
        start = time.perf_counter()
        self.mesh = create_mesh_source(
            self.config.mesh_source, self.config.h_max, self.config.refinements
        ).build()
        ref = build_ref_tensors(self.n_local)
        self.solution = solve_stationary(self.mesh, self.spec, ref)
        c = self.solution[0]
        basename = os.path.join(self.log_path, self.config.output_basename)
        self.snapshots.append(
            write_vtu(VtuSnapshot(self.mesh, to_lagrange(c), self.config.var_name, basename, 0))
        )
        self.wall_time = time.perf_counter() - start
        self.run_state.append(dict(mass=integral(self.mesh, c), elapsed_s=self.wall_time))
        logger.info("stationary solve on %d triangles took %.3fs", self.mesh.num_t, self.wall_time)
        self.log_state()
        return self.solution

    def summary(self):
        return (
            f"stationary solve on {self.mesh.num_t} triangles (p={self.config.p}) "
            f"in {self.wall_time:.2f}s; mass {self.run_state[-1]['mass']:.6e}"
        )

    def human_readable_state(self):
        log_str = "Run Settings\n\n"
        log_str += "\n".join(
            "\t{}: {}".format(k, v) for k, v in self.config.to_dict().items()
        )
        log_str += "\n\n------------------ \n"
        for datum in self.run_state:
            log_str += "Stationary solve: mass={mass:.6e} ({elapsed_s:.3f}s)\n".format(**datum)
        return log_str

import logging
import os
import time

import numpy as np

from ldgdiffusion.discrete.fields import integral, to_lagrange
from ldgdiffusion.exceptions import LdgError
from ldgdiffusion.discrete.reftensors import build_ref_tensors
from ldgdiffusion.mesh.sources import create_mesh_source
from ldgdiffusion.simulation.base import Simulation
from ldgdiffusion.system.blocks import assemble_static_blocks, build_blocks
from ldgdiffusion.system.stepping import euler_step, initial_state
from ldgdiffusion.utils import n_local_from_order
from ldgdiffusion.vtkout import VtuSnapshot, write_vtu

logger = logging.getLogger(__name__)


class TimeSteppingSimulation(Simulation):
    """
    Implicit Euler run: mesh, reference tensors and time-independent blocks
    are built once; d, f and boundary data are reassembled every step.
    """

    def __init__(self, config, log_dir="output", log_path=None):
        super().__init__(config=config, log_dir=log_dir, log_path=log_path)
        self.spec = config.problem_spec()
        self.n_local = n_local_from_order(config.p)
        self.mesh = None
        self.ref = None
        self.static = None
        self.state = None
        self.snapshots = []
        self.wall_time = 0.0

    @property
    def basename(self):
        return os.path.join(self.log_path, self.config.output_basename)

    def setup(self):
        self.mesh = create_mesh_source(
            self.config.mesh_source, self.config.h_max, self.config.refinements
        ).build()
        self.ref = build_ref_tensors(self.n_local)
        self.static = assemble_static_blocks(self.mesh, self.spec, self.ref)
        self.state = initial_state(self.mesh, self.spec, self.ref)

    def write_step_state(self, elapsed):
        c = self.state.concentration(self.n_local)
        values = c.values
        if not np.isfinite(values).all():
            raise LdgError(f"non-finite concentration at step {self.state.step}")
        datum = dict(
            step=self.state.step,
            t=self.state.t,
            elapsed_s=elapsed,
            mass=integral(self.mesh, c),
            c_min=float(values.min()),
            c_max=float(values.max()),
        )
        self.run_state.append(datum)
        if self.state.step % self.config.output_every == 0:
            path = write_vtu(
                VtuSnapshot(
                    self.mesh, to_lagrange(c), self.config.var_name, self.basename, self.state.step
                )
            )
            self.snapshots.append(path)

    def run(self):
        start = time.perf_counter()
        self.setup()
        logger.info(
            "%d triangles, p=%d, %d steps of %.4g",
            self.mesh.num_t,
            self.config.p,
            self.spec.num_steps,
            self.spec.dt,
        )
        for step in range(1, self.spec.num_steps + 1):
            step_start = time.perf_counter()
            t = self.spec.time_at(step)
            blocks = build_blocks(self.mesh, self.spec, self.ref, t, static=self.static)
            self.state = euler_step(
                self.state, blocks, self.spec.dt, eta=self.spec.eta, p=self.config.p
            )
            elapsed = time.perf_counter() - step_start
            self.write_step_state(elapsed)
            logger.info("step %d/%d t=%.4f took %.3fs", step, self.spec.num_steps, t, elapsed)
        self.wall_time = time.perf_counter() - start
        self.log_state()
        return self.state

    def summary(self):
        last = self.run_state[-1] if self.run_state else {}
        return (
            f"{self.spec.num_steps} steps on {self.mesh.num_t} triangles (p={self.config.p}) "
            f"in {self.wall_time:.2f}s; {len(self.snapshots)} snapshots; "
            f"final mass {last.get('mass', float('nan')):.6e}"
        )

    def human_readable_state(self):
        log_str = "Run Settings\n\n"
        log_str += "\n".join(
            "\t{}: {}".format(k, v) for k, v in self.config.to_dict().items()
        )
        log_str += "\n\n------------------ \n"
        for datum in self.run_state:
            log_str += (
                "Step {step}: t={t:.6g} mass={mass:.6e} min={c_min:.4e} "
                "max={c_max:.4e} ({elapsed_s:.3f}s)\n".format(**datum)
            )
        log_str += "------------------ \n"
        log_str += "Wall time: {:.3f}s\n".format(self.wall_time)
        return log_str

import dataclasses
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor

from ldgdiffusion.constants import (
    CONVERGENCE_CSV_FILE,
    CONVERGENCE_CSV_HEADER,
)
from ldgdiffusion.discrete.fields import l2_error
from ldgdiffusion.discrete.reftensors import build_ref_tensors
from ldgdiffusion.exceptions import ConfigError
from ldgdiffusion.exprlang import ExprFunction
from ldgdiffusion.mesh.domains import refine_uniform
from ldgdiffusion.mesh.sources import SquareMeshSource, create_mesh_source
from ldgdiffusion.simulation.base import Simulation
from ldgdiffusion.system.stepping import solve_stationary
from ldgdiffusion.utils import get_thread_count, n_local_from_order

logger = logging.getLogger(__name__)

REPORT_HEADER = (
    "Stationary convergence study, coarse mesh: {source}. Orders are the quantity "
    "to compare; error magnitudes depend on the coarse mesh."
)


def estimated_order(error_coarse, error_fine, h_coarse, h_fine):
    if error_coarse <= 0 or error_fine <= 0:
        return float("nan")
    return math.log(error_coarse / error_fine) / math.log(h_coarse / h_fine)


class ConvergenceStudy(Simulation):
    """
    Solves the stationary problem for every polynomial order on successively
    refined meshes and estimates convergence orders from the L2 errors.
    """

    def __init__(self, config, log_dir="output", log_path=None, threads=None):
        super().__init__(config=config, log_dir=log_dir, log_path=log_path)
        if not config.exact_c:
            raise ConfigError("convergence.exact_c", "required for a convergence study")
        if not config.levels or not config.orders:
            raise ConfigError("convergence.levels", "nothing to run")
        self.spec = dataclasses.replace(config.problem_spec(), stationary=True)
        self.exact = ExprFunction(config.exact_c).at_time(0.0)
        self.threads = threads or get_thread_count()
        self.source = create_mesh_source(config.mesh_source, config.h_max, config.refinements)
        self.rows = []
        self.wall_time = 0.0

    def _meshes(self):
        meshes = {}
        mesh = self.source.build()
        for j in range(max(self.config.levels) + 1):
            if j in self.config.levels:
                meshes[j] = mesh
            if j < max(self.config.levels):
                mesh = refine_uniform(mesh)
        return meshes

    def _mesh_size(self, mesh, j):
        if isinstance(self.source, SquareMeshSource):
            dim = max(math.ceil(1.0 / self.config.h_max - 1e-12), 1)
            return 1.0 / (dim * 2 ** (j + self.config.refinements))
        return float(mesh.area_e.max())

    def _solve(self, p, j, mesh, ref):
        start = time.perf_counter()
        c, _, _ = solve_stationary(mesh, self.spec, ref)
        error = l2_error(mesh, c, self.exact, 2 * p + 2)
        logger.info(
            "p=%d j=%d K=%d error=%.4e (%.2fs)", p, j, mesh.num_t, error, time.perf_counter() - start
        )
        return error

    def run(self):
        start = time.perf_counter()
        meshes = self._meshes()
        refs = {p: build_ref_tensors(n_local_from_order(p)) for p in self.config.orders}
        tasks = [(p, j) for p in self.config.orders for j in sorted(meshes)]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            futures = {
                (p, j): pool.submit(self._solve, p, j, meshes[j], refs[p]) for p, j in tasks
            }
            errors = {key: future.result() for key, future in futures.items()}

        self.rows = []
        for p in self.config.orders:
            previous = None
            for j in sorted(meshes):
                h = self._mesh_size(meshes[j], j)
                error = errors[(p, j)]
                alpha = None
                if previous is not None:
                    alpha = estimated_order(previous[1], error, previous[0], h)
                self.rows.append(
                    dict(p=p, j=j, h=h, K=meshes[j].num_t, error=error, alpha=alpha)
                )
                previous = (h, error)
        self.run_state = list(self.rows)
        self.wall_time = time.perf_counter() - start
        self.log_state()
        return self.rows

    def to_csv(self):
        lines = [CONVERGENCE_CSV_HEADER]
        for row in self.rows:
            alpha = "" if row["alpha"] is None else "%.6f" % row["alpha"]
            lines.append(
                "%d,%d,%.10e,%d,%.10e,%s"
                % (row["p"], row["j"], row["h"], row["K"], row["error"], alpha)
            )
        return "\n".join(lines) + "\n"

    def to_table(self):
        lines = [
            REPORT_HEADER.format(source=self.source.describe()),
            "",
            f"{'p':>2} {'j':>3} {'h':>12} {'K':>8} {'error':>14} {'alpha':>8}",
        ]
        for row in self.rows:
            alpha = "" if row["alpha"] is None else f"{row['alpha']:.2f}"
            lines.append(
                f"{row['p']:>2} {row['j']:>3} {row['h']:>12.4e} {row['K']:>8} "
                f"{row['error']:>14.6e} {alpha:>8}"
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path=None):
        path = path or os.path.join(self.log_path, CONVERGENCE_CSV_FILE)
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", newline="") as f:
            f.write(self.to_csv())
        return path

    def human_readable_state(self):
        return self.to_table() + "\nWall time: {:.3f}s\n".format(self.wall_time)


def plot_convergence(rows, path):
    """Log-log plot of the L2 error over h, one line per polynomial order."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for p in sorted({row["p"] for row in rows}):
        selected = [row for row in rows if row["p"] == p]
        ax.loglog(
            [row["h"] for row in selected],
            [row["error"] for row in selected],
            marker="o",
            label=f"p = {p}",
        )
    ax.set_xlabel("h")
    ax.set_ylabel("L2 error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path

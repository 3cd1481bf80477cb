import logging
import warnings

import numpy as np
import scipy.sparse.linalg as spla

from ldgdiffusion.constants import SOLVER_RESIDUAL_TOL
from ldgdiffusion.discrete.fields import default_quad_order, project
from ldgdiffusion.exceptions import LinearSolverError
from ldgdiffusion.system.blocks import build_blocks
from ldgdiffusion.system.problem import SystemState

logger = logging.getLogger(__name__)


def solve_sparse(matrix, rhs, eta=None, p=None):
    """
    Direct sparse LU solve with a relative residual check
    ||matrix y - rhs|| / max(||rhs||, 1) <= 1e-10.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("error", spla.MatrixRankWarning)
        try:
            y = spla.spsolve(matrix.tocsc(), rhs)
        except (spla.MatrixRankWarning, RuntimeError) as e:
            raise LinearSolverError(f"sparse LU failed: {e}", eta=eta, p=p)
    y = np.asarray(y, dtype=float).reshape(-1)
    if not np.isfinite(y).all():
        raise LinearSolverError("solution contains non-finite values", eta=eta, p=p)
    residual = np.linalg.norm(matrix @ y - rhs) / max(np.linalg.norm(rhs), 1.0)
    if residual > SOLVER_RESIDUAL_TOL:
        raise LinearSolverError("residual above tolerance", eta=eta, p=p, residual=residual)
    logger.debug("solved %d unknowns, relative residual %.2e", y.size, residual)
    return y


def euler_step(state, blocks, dt, eta=None, p=None):
    """
    One implicit Euler step (W + dt A) Y^{n+1} = W Y^n + dt V, with A and V
    assembled at the new time level blocks.t.
    """
    if not dt > 0:
        raise ValueError(f"time step must be positive, got {dt}")
    w = blocks.w
    lhs = w + dt * blocks.a
    rhs = w @ state.y + dt * blocks.v
    y = solve_sparse(lhs, rhs, eta=eta, p=p)
    return SystemState(y=y, t=blocks.t, step=state.step + 1)


def solve_stationary(mesh, spec, ref, t=0.0, static=None):
    """
    Solves A Y = V without the time derivative.

    :return: (C, Z^1, Z^2) as DofMatrix
    """
    blocks = build_blocks(mesh, spec, ref, t, static=static)
    y = solve_sparse(blocks.a, blocks.v, eta=spec.eta, p=ref.p)
    state = SystemState(y=y, t=t)
    z1, z2 = state.flux(ref.n_local)
    return state.concentration(ref.n_local), z1, z2


def initial_state(mesh, spec, ref):
    c0 = project(
        mesh, lambda x1, x2: spec.c0(0.0, x1, x2), default_quad_order(ref.n_local), ref.m_hat
    )
    return SystemState.from_fields(c0, t=0.0, step=0)

"""
Block matrix A and right-hand side V of the semi-discrete system

    W dY/dt + A(t) Y = V(t),   Y = [Z^1; Z^2; C],   W = blockdiag(0, 0, M).
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ldgdiffusion.assembly import (
    assemble_dphi_phi,
    assemble_dphi_phi_coeff,
    assemble_edge_avg_coeff_nu,
    assemble_edge_avg_nu,
    assemble_edge_jump,
    assemble_mass,
    assemble_vec_dirichlet,
    assemble_vec_dirichlet_nu,
    assemble_vec_neumann,
    assemble_vec_source,
    partition_selectors,
)
from ldgdiffusion.discrete.fields import default_quad_order, project

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StaticBlocks:
    """Time-independent operators, assembled once per run."""

    mass: sp.csr_matrix
    h: tuple
    q: tuple
    q_n: tuple
    s: sp.csr_matrix
    s_d: sp.csr_matrix
    selector_interior: np.ndarray
    selector_dirichlet: np.ndarray
    selector_neumann: np.ndarray


@dataclass(frozen=True, eq=False)
class BlockSet:
    a: sp.csr_matrix
    v: np.ndarray
    mass: sp.csr_matrix
    t: float

    @property
    def w(self):
        size = self.mass.shape[0]
        zero = sp.csr_matrix((size, size))
        return sp.block_diag((zero, zero, self.mass), format="csr")


def assemble_static_blocks(mesh, spec, ref):
    interior, dirichlet, neumann = partition_selectors(mesh, spec.boundary_map)
    q_pairs = [
        assemble_edge_avg_nu(mesh, m, interior, neumann, ref.s_diag, ref.s_offdiag)
        for m in (0, 1)
    ]
    s, s_d = assemble_edge_jump(mesh, interior, dirichlet, ref.s_diag, ref.s_offdiag)
    logger.debug("assembled time-independent blocks for %d triangles", mesh.num_t)
    return StaticBlocks(
        mass=assemble_mass(mesh, ref.m_hat),
        h=assemble_dphi_phi(mesh, ref.h_hat),
        q=tuple(pair[0] for pair in q_pairs),
        q_n=tuple(pair[1] for pair in q_pairs),
        s=s,
        s_d=s_d,
        selector_interior=interior,
        selector_dirichlet=dirichlet,
        selector_neumann=neumann,
    )


def build_blocks(mesh, spec, ref, t, static=None):
    """
    Assembles A(t) and V(t). Coefficients d and f are L2-projected at time t.

    Args:
        mesh: Mesh
        spec: ProblemSpec
        ref: RefTensors
        t: time level
        static: StaticBlocks reused across time steps

    Returns:
        BlockSet
    """
    static = static or assemble_static_blocks(mesh, spec, ref)
    n_local = ref.n_local
    q_ord = default_quad_order(n_local)
    d_disc = project(mesh, lambda x1, x2: spec.d(t, x1, x2), q_ord, ref.m_hat)
    f_disc = project(mesh, lambda x1, x2: spec.f(t, x1, x2), q_ord, ref.m_hat)

    g = assemble_dphi_phi_coeff(mesh, ref.g_hat, d_disc)
    r_pairs = [
        assemble_edge_avg_coeff_nu(
            mesh,
            m,
            d_disc,
            static.selector_interior,
            static.selector_dirichlet,
            ref.r_diag,
            ref.r_offdiag,
        )
        for m in (0, 1)
    ]
    j_d = assemble_vec_dirichlet_nu(mesh, static.selector_dirichlet, spec.c_d, t, n_local)
    k_d = assemble_vec_dirichlet(mesh, static.selector_dirichlet, spec.c_d, t, n_local)
    k_n = assemble_vec_neumann(mesh, static.selector_neumann, d_disc, spec.g_n, t)
    source = assemble_vec_source(static.mass, f_disc)

    m = static.mass
    a = sp.bmat(
        [
            [m, None, -static.h[0] + static.q[0] + static.q_n[0]],
            [None, m, -static.h[1] + static.q[1] + static.q_n[1]],
            [
                -g[0] + r_pairs[0][0] + r_pairs[0][1],
                -g[1] + r_pairs[1][0] + r_pairs[1][1],
                spec.eta * (static.s + static.s_d),
            ],
        ],
        format="csr",
    )
    v = np.concatenate([-j_d[0], -j_d[1], spec.eta * k_d - k_n + source])
    return BlockSet(a=a, v=v, mass=m, t=t)

"""
Right-hand side vectors. Boundary data are callables f(t, x1, x2) evaluated at
mapped 1D Gauss points of order 2p + 1 on the selected edges. All vectors are
returned k-major with length K N.
"""
import numpy as np

from ldgdiffusion.assembly.operators import check_dof
from ldgdiffusion.assembly.selectors import check_selector
from ldgdiffusion.discrete.basis import phi_table
from ldgdiffusion.discrete.quadrature import gamma_map, quad_rule_1d
from ldgdiffusion.utils import order_from_n_local


def _edge_samples(mesh, selector, func, t, n, n_local):
    """
    For triangles selected on local edge n, returns (k, values, basis,
    weights) with values of shape (P, R) and basis of shape (R, N).
    """
    rule = quad_rule_1d(2 * order_from_n_local(n_local) + 1)
    g1, g2 = gamma_map(n + 1, rule.points)
    k = np.flatnonzero(selector[:, n])
    x1, x2 = mesh.map_reference(g1, g2)
    x1, x2 = x1[k], x2[k]
    values = np.broadcast_to(np.asarray(func(t, x1, x2), dtype=float), x1.shape)
    return k, values, phi_table(n_local, g1, g2), rule.weights


def _edge_moments(mesh, selector, func, t, n_local, weight):
    selector = check_selector(mesh, selector)
    result = np.zeros((mesh.num_t, n_local))
    for n in range(3):
        k, values, basis, w = _edge_samples(mesh, selector, func, t, n, n_local)
        if k.size:
            result[k] += weight[k, n, None] * ((values * w) @ basis)
    return result


def assemble_vec_dirichlet_nu(mesh, selector, c_d, t, n_local):
    """(J_D^1, J_D^2): Dirichlet data times nu^m |E| tested with phi_ki."""
    return tuple(
        _edge_moments(
            mesh, selector, c_d, t, n_local, mesh.area_e0t * mesh.nu_e0t[:, :, m]
        ).reshape(-1)
        for m in (0, 1)
    )


def assemble_vec_dirichlet(mesh, selector, c_d, t, n_local):
    """K_D: Dirichlet penalty data, without edge length."""
    return _edge_moments(
        mesh, selector, c_d, t, n_local, np.ones((mesh.num_t, 3))
    ).reshape(-1)


def assemble_vec_neumann(mesh, selector, d_disc, g_n, t):
    """K_N: Neumann flux d_h g_N tested with phi_ki."""
    selector = check_selector(mesh, selector)
    n_local = np.shape(d_disc.values)[1]
    order_from_n_local(n_local)
    d_values = check_dof(mesh, d_disc, n_local)
    result = np.zeros((mesh.num_t, n_local))
    for n in range(3):
        k, values, basis, w = _edge_samples(mesh, selector, g_n, t, n, n_local)
        if k.size:
            d_on_edge = d_values[k] @ basis.T
            result[k] += mesh.area_e0t[k, n, None] * ((values * d_on_edge * w) @ basis)
    return result.reshape(-1)


def assemble_vec_source(mass, f_disc):
    """L = M vec(F)."""
    return mass @ f_disc.to_vector()

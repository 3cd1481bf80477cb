"""
Global block operators of the LDG system. Every operator is a K N x K N CSR
matrix assembled from N x N reference blocks scaled per triangle, or per
pair of neighbouring triangles for the edge coupling terms.

Local edges and gradient components are 0-based in this module.
"""
import numpy as np

from ldgdiffusion.assembly.selectors import check_selector
from ldgdiffusion.assembly.triplets import TripletAccumulator
from ldgdiffusion.exceptions import ShapeMismatchError


def _check_n_local(tensor, n_local, name):
    if tensor.shape[0] != n_local or tensor.shape[1] != n_local:
        raise ShapeMismatchError(
            f"{name} has leading shape {tensor.shape[:2]}, expected ({n_local}, {n_local})"
        )


def check_dof(mesh, d_disc, n_local):
    values = d_disc.values
    if values.shape != (mesh.num_t, n_local):
        raise ShapeMismatchError(
            f"coefficient field has shape {values.shape}, expected ({mesh.num_t}, {n_local})"
        )
    return values


def _check_component(m):
    if m not in (0, 1):
        raise ValueError(f"normal component must be 0 or 1, got {m!r}")


def assemble_mass(mesh, m_hat):
    """M = 2 diag(|T_k|) (x) m_hat."""
    m_hat = np.asarray(m_hat)
    acc = TripletAccumulator(mesh.num_t, m_hat.shape[0])
    acc.add_diagonal(2 * mesh.area_t, m_hat)
    return acc.to_csr()


def _gradient_blocks(mesh, by_component):
    """
    Combines reference blocks (K, N, N) for d/dx^1 and d/dx^2 with the
    cofactors of B_k into physical x^1 and x^2 derivatives.
    """
    b = mesh.b
    first, second = by_component
    blocks_1 = b[:, 1, 1, None, None] * first - b[:, 1, 0, None, None] * second
    blocks_2 = -b[:, 0, 1, None, None] * first + b[:, 0, 0, None, None] * second
    return blocks_1, blocks_2


def _element_pair(mesh, n_local, blocks):
    k = np.arange(mesh.num_t)
    operators = []
    for component_blocks in blocks:
        acc = TripletAccumulator(mesh.num_t, n_local)
        acc.add_blocks(k, k, component_blocks)
        operators.append(acc.to_csr())
    return tuple(operators)


def assemble_dphi_phi(mesh, h_hat):
    """(H^1, H^2): integrals of d_m phi_ki phi_kj."""
    h_hat = np.asarray(h_hat)
    n_local = h_hat.shape[0]
    _check_n_local(h_hat, n_local, "h_hat")
    shape = (mesh.num_t, n_local, n_local)
    by_component = (
        np.broadcast_to(h_hat[:, :, 0], shape),
        np.broadcast_to(h_hat[:, :, 1], shape),
    )
    return _element_pair(mesh, n_local, _gradient_blocks(mesh, by_component))


def assemble_dphi_phi_coeff(mesh, g_hat, d_disc):
    """(G^1, G^2): integrals of d_m phi_ki d_h phi_kj."""
    g_hat = np.asarray(g_hat)
    n_local = g_hat.shape[0]
    _check_n_local(g_hat, n_local, "g_hat")
    d_values = check_dof(mesh, d_disc, n_local)
    by_component = (
        np.einsum("kl,ijl->kij", d_values, g_hat[:, :, :, 0]),
        np.einsum("kl,ijl->kij", d_values, g_hat[:, :, :, 1]),
    )
    return _element_pair(mesh, n_local, _gradient_blocks(mesh, by_component))


def assemble_edge_jump(mesh, selector_interior, selector_bdr_dirichlet, s_diag, s_offdiag):
    """
    (S, S_D): penalty terms. The 1/|E| penalty scaling cancels the edge
    length of the line integral, so only reference blocks appear.
    """
    n_local = s_diag.shape[0]
    interior = check_selector(mesh, selector_interior, "interior selector")
    dirichlet = check_selector(mesh, selector_bdr_dirichlet, "Dirichlet selector")
    ones = np.ones(mesh.num_t)

    jump = TripletAccumulator(mesh.num_t, n_local)
    for n in range(3):
        jump.add_diagonal(ones, s_diag[:, :, n], mask=interior[:, n])
    for n_minus in range(3):
        for n_plus in range(3):
            k_minus, k_plus = mesh.interior_pairs(n_minus, n_plus)
            keep = interior[k_minus, n_minus]
            blocks = np.broadcast_to(
                s_offdiag[:, :, n_minus, n_plus], (int(keep.sum()), n_local, n_local)
            )
            jump.add_blocks(k_minus[keep], k_plus[keep], blocks, scale=-1.0)

    jump_dirichlet = TripletAccumulator(mesh.num_t, n_local)
    for n in range(3):
        jump_dirichlet.add_diagonal(ones, s_diag[:, :, n], mask=dirichlet[:, n])
    return jump.to_csr(), jump_dirichlet.to_csr()


def assemble_edge_avg_nu(mesh, m, selector_interior, selector_bdr_neumann, s_diag, s_offdiag):
    """
    (Q^m, Q_N^m): average of the primary variable times nu^m on interior
    edges, and its one-sided Neumann counterpart.
    """
    _check_component(m)
    n_local = s_diag.shape[0]
    interior = check_selector(mesh, selector_interior, "interior selector")
    neumann = check_selector(mesh, selector_bdr_neumann, "Neumann selector")
    weight = mesh.area_e0t * mesh.nu_e0t[:, :, m]

    average = TripletAccumulator(mesh.num_t, n_local)
    for n in range(3):
        average.add_diagonal(0.5 * weight[:, n], s_diag[:, :, n], mask=interior[:, n])
    for n_minus in range(3):
        for n_plus in range(3):
            k_minus, k_plus = mesh.interior_pairs(n_minus, n_plus)
            keep = interior[k_minus, n_minus]
            k_minus, k_plus = k_minus[keep], k_plus[keep]
            blocks = (0.5 * weight[k_minus, n_minus])[:, None, None] * s_offdiag[
                None, :, :, n_minus, n_plus
            ]
            average.add_blocks(k_minus, k_plus, blocks)

    boundary = TripletAccumulator(mesh.num_t, n_local)
    for n in range(3):
        boundary.add_diagonal(weight[:, n], s_diag[:, :, n], mask=neumann[:, n])
    return average.to_csr(), boundary.to_csr()


def assemble_edge_avg_coeff_nu(
    mesh, m, d_disc, selector_interior, selector_bdr_dirichlet, r_diag, r_offdiag
):
    """
    (R^m, R_D^m): average of d_h z^m times nu^m. Off-diagonal blocks take the
    diffusion coefficient from the neighbouring triangle.
    """
    _check_component(m)
    n_local = r_diag.shape[0]
    d_values = check_dof(mesh, d_disc, n_local)
    interior = check_selector(mesh, selector_interior, "interior selector")
    dirichlet = check_selector(mesh, selector_bdr_dirichlet, "Dirichlet selector")
    weight = mesh.area_e0t * mesh.nu_e0t[:, :, m]

    average = TripletAccumulator(mesh.num_t, n_local)
    boundary = TripletAccumulator(mesh.num_t, n_local)
    for n in range(3):
        local = np.einsum("kl,ijl->kij", d_values, r_diag[:, :, :, n])
        for acc, factor, selected in ((average, 0.5, interior), (boundary, 1.0, dirichlet)):
            k = np.flatnonzero(selected[:, n])
            acc.add_blocks(k, k, (factor * weight[k, n])[:, None, None] * local[k])
    for n_minus in range(3):
        for n_plus in range(3):
            k_minus, k_plus = mesh.interior_pairs(n_minus, n_plus)
            keep = interior[k_minus, n_minus]
            k_minus, k_plus = k_minus[keep], k_plus[keep]
            local = np.einsum(
                "pl,ijl->pij", d_values[k_plus], r_offdiag[:, :, :, n_minus, n_plus]
            )
            blocks = (0.5 * weight[k_minus, n_minus])[:, None, None] * local
            average.add_blocks(k_minus, k_plus, blocks)
    return average.to_csr(), boundary.to_csr()

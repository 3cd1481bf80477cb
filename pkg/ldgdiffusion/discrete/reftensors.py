"""
Integrals of basis function products on the reference triangle and its edges.

Index layout (0-based, trailing axes select gradient component, local edge,
or the (n-, n+) edge pair):
  m_hat[i, j]              = int phi_i phi_j
  h_hat[i, j, m]           = int d_m phi_i phi_j
  g_hat[i, j, l, m]        = int d_m phi_i phi_l phi_j
  s_diag[i, j, n]          = int_0^1 phi_i(gamma_n) phi_j(gamma_n)
  s_offdiag[i, j, a, b]    = int_0^1 phi_i(gamma_a) phi_j(theta_ab(gamma_a))
  r_diag[i, j, l, n]       = int_0^1 phi_i phi_l phi_j on edge n
  r_offdiag[i, j, l, a, b] = int_0^1 phi_i(gamma_a) phi_l(theta) phi_j(theta)
"""
from dataclasses import dataclass

import numpy as np

from ldgdiffusion.discrete.quadrature import (
    build_basis_cache,
    quad_rule_1d,
    quad_rule_2d,
)
from ldgdiffusion.utils import order_from_n_local


@dataclass(frozen=True, eq=False)
class RefTensors:
    n_local: int
    m_hat: np.ndarray
    h_hat: np.ndarray
    g_hat: np.ndarray
    s_diag: np.ndarray
    s_offdiag: np.ndarray
    r_diag: np.ndarray
    r_offdiag: np.ndarray

    @property
    def p(self):
        return order_from_n_local(self.n_local)


def _orders(p):
    # triple products use order 3p so that every tensor is integrated exactly
    return max(2 * p, 1), 2 * p + 1, max(3 * p, 1)


def _readonly(arr):
    arr.setflags(write=False)
    return arr


def integrate_ref_elem_phi_phi(n_local, cache=None):
    cache = cache or build_basis_cache(n_local)
    q_elem, _, _ = _orders(order_from_n_local(n_local))
    w = quad_rule_2d(q_elem).weights
    values = cache.phi_2d[q_elem]
    return np.einsum("r,ri,rj->ij", w, values, values)


def integrate_ref_elem_dphi_phi(n_local, cache=None):
    cache = cache or build_basis_cache(n_local)
    q_elem, _, _ = _orders(order_from_n_local(n_local))
    w = quad_rule_2d(q_elem).weights
    return np.einsum(
        "r,rim,rj->ijm", w, cache.grad_phi_2d[q_elem], cache.phi_2d[q_elem]
    )


def integrate_ref_elem_dphi_phi_phi(n_local, cache=None):
    cache = cache or build_basis_cache(n_local)
    _, _, q_triple = _orders(order_from_n_local(n_local))
    w = quad_rule_2d(q_triple).weights
    values = cache.phi_2d[q_triple]
    return np.einsum(
        "r,rim,rl,rj->ijlm", w, cache.grad_phi_2d[q_triple], values, values
    )


def integrate_ref_edge_phi_int_phi_int(n_local, cache=None):
    cache = cache or build_basis_cache(n_local)
    _, q_edge, _ = _orders(order_from_n_local(n_local))
    w = quad_rule_1d(q_edge).weights
    values = cache.phi_1d[q_edge]
    return np.einsum("r,rin,rjn->ijn", w, values, values)


def integrate_ref_edge_phi_int_phi_ext(n_local, cache=None):
    cache = cache or build_basis_cache(n_local)
    _, q_edge, _ = _orders(order_from_n_local(n_local))
    w = quad_rule_1d(q_edge).weights
    return np.einsum(
        "r,ria,rjab->ijab", w, cache.phi_1d[q_edge], cache.theta_phi_1d[q_edge]
    )


def integrate_ref_edge_phi_int_phi_int_phi_int(n_local, cache=None):
    cache = cache or build_basis_cache(n_local)
    _, _, q_triple = _orders(order_from_n_local(n_local))
    w = quad_rule_1d(q_triple).weights
    values = cache.phi_1d[q_triple]
    return np.einsum("r,rin,rln,rjn->ijln", w, values, values, values)


def integrate_ref_edge_phi_int_phi_ext_phi_ext(n_local, cache=None):
    cache = cache or build_basis_cache(n_local)
    _, _, q_triple = _orders(order_from_n_local(n_local))
    w = quad_rule_1d(q_triple).weights
    outer = cache.theta_phi_1d[q_triple]
    return np.einsum("r,ria,rlab,rjab->ijlab", w, cache.phi_1d[q_triple], outer, outer)


def build_ref_tensors(n_local):
    """Computes every reference tensor for N local basis functions once."""
    cache = build_basis_cache(n_local)
    return RefTensors(
        n_local=n_local,
        m_hat=_readonly(integrate_ref_elem_phi_phi(n_local, cache)),
        h_hat=_readonly(integrate_ref_elem_dphi_phi(n_local, cache)),
        g_hat=_readonly(integrate_ref_elem_dphi_phi_phi(n_local, cache)),
        s_diag=_readonly(integrate_ref_edge_phi_int_phi_int(n_local, cache)),
        s_offdiag=_readonly(integrate_ref_edge_phi_int_phi_ext(n_local, cache)),
        r_diag=_readonly(integrate_ref_edge_phi_int_phi_int_phi_int(n_local, cache)),
        r_offdiag=_readonly(integrate_ref_edge_phi_int_phi_ext_phi_ext(n_local, cache)),
    )

"""
Quadrature rules on [0, 1] and on the reference triangle, the edge
parametrizations gamma_n and the edge-to-edge maps theta_{n- n+}, plus a cache
of basis values at quadrature nodes.

Local edges are numbered 1..3; edge n lies opposite reference vertex n.
"""
import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np
from numpy.polynomial.legendre import leggauss

from ldgdiffusion.constants import MAX_QUAD_ORDER_1D
from ldgdiffusion.discrete.basis import grad_phi_table, phi_table
from ldgdiffusion.exceptions import UnsupportedOrderError
from ldgdiffusion.utils import order_from_n_local


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class QuadRule1D:
    order: int
    points: np.ndarray
    weights: np.ndarray

    @property
    def num_points(self):
        return len(self.weights)


@dataclass(frozen=True)
class QuadRule2D:
    order: int
    x1: np.ndarray
    x2: np.ndarray
    weights: np.ndarray

    @property
    def num_points(self):
        return len(self.weights)


def quad_rule_1d(q_ord):
    """
    Gauss-Legendre rule on [0, 1] exact for polynomials of degree max(q_ord, 1).
    :param q_ord: requested exactness degree, 0..17
    :return: QuadRule1D, weights summing to 1
    """
    if q_ord < 0 or q_ord > MAX_QUAD_ORDER_1D:
        raise UnsupportedOrderError(
            f"1D quadrature order {q_ord} outside 0..{MAX_QUAD_ORDER_1D}"
        )
    num_points = math.ceil((max(q_ord, 1) + 1) / 2)
    points, weights = leggauss(num_points)
    # [-1, 1] -> [0, 1]
    return QuadRule1D(
        order=2 * num_points - 1,
        points=_frozen((points + 1) / 2),
        weights=_frozen(weights / 2),
    )


_A1 = (6 - np.sqrt(15)) / 21
_A2 = (6 + np.sqrt(15)) / 21
_W1 = (155 - np.sqrt(15)) / 2400
_W2 = (155 + np.sqrt(15)) / 2400

_ORDER_4_RULE = (
    [0.445948490915965, 0.108103018168070, 0.445948490915965,
     0.091576213509771, 0.816847572980458, 0.091576213509771],
    [0.108103018168070, 0.445948490915965, 0.445948490915965,
     0.816847572980458, 0.091576213509771, 0.091576213509771],
    [0.111690794839005, 0.111690794839005, 0.111690794839005,
     0.054975871827661, 0.054975871827661, 0.054975871827661],
)

# order 3 requests are served by the order 4 rule
_TRIANGLE_RULES = {
    1: ([1 / 3], [1 / 3], [1 / 2]),
    2: ([1 / 6, 2 / 3, 1 / 6], [1 / 6, 1 / 6, 2 / 3], [1 / 6, 1 / 6, 1 / 6]),
    4: _ORDER_4_RULE,
    5: (
        [1 / 3, _A1, 1 - 2 * _A1, _A1, _A2, 1 - 2 * _A2, _A2],
        [1 / 3, 1 - 2 * _A1, _A1, _A1, 1 - 2 * _A2, _A2, _A2],
        [9 / 80, _W1, _W1, _W1, _W2, _W2, _W2],
    ),
    6: (
        [0.063089014491502, 0.873821971016996, 0.063089014491502,
         0.249286745170910, 0.501426509658179, 0.249286745170910,
         0.310352451033785, 0.053145049844816, 0.636502499121399,
         0.053145049844816, 0.636502499121399, 0.310352451033785],
        [0.063089014491502, 0.063089014491502, 0.873821971016996,
         0.249286745170910, 0.249286745170910, 0.501426509658179,
         0.053145049844816, 0.310352451033785, 0.053145049844816,
         0.636502499121399, 0.310352451033785, 0.636502499121399],
        [0.025422453185103, 0.025422453185103, 0.025422453185103,
         0.058393137863189, 0.058393137863189, 0.058393137863189,
         0.041425537809187, 0.041425537809187, 0.041425537809187,
         0.041425537809187, 0.041425537809187, 0.041425537809187],
    ),
}


def _collapsed_gauss_rule(q_ord):
    # (u, v) in [0,1]^2 -> (u, (1-u) v) has Jacobian 1-u, which raises the
    # degree in u by one
    num_points = math.ceil((q_ord + 2) / 2)
    nodes, weights = leggauss(num_points)
    nodes = (nodes + 1) / 2
    weights = weights / 2
    u, v = np.meshgrid(nodes, nodes, indexing="ij")
    wu, wv = np.meshgrid(weights, weights, indexing="ij")
    x1 = u.ravel()
    x2 = ((1 - u) * v).ravel()
    w = (wu * wv * (1 - u)).ravel()
    return x1, x2, w


def quad_rule_2d(q_ord):
    """
    Quadrature rule on the reference triangle exact for polynomials of total
    degree q_ord. Weights include the reference area and sum to 1/2.
    """
    if q_ord < 0:
        raise UnsupportedOrderError(f"2D quadrature order must be >= 0, got {q_ord}")
    if q_ord <= 1:
        key = 1
    elif q_ord == 3:
        key = 4
    else:
        key = q_ord
    if key in _TRIANGLE_RULES:
        x1, x2, w = _TRIANGLE_RULES[key]
        return QuadRule2D(order=key, x1=_frozen(x1), x2=_frozen(x2), weights=_frozen(w))
    x1, x2, w = _collapsed_gauss_rule(q_ord)
    return QuadRule2D(order=q_ord, x1=_frozen(x1), x2=_frozen(x2), weights=_frozen(w))


def gamma_map(n, s):
    """
    Parametrization of reference edge n over s in [0, 1].
    :return: tuple (x1, x2) of arrays shaped like s
    """
    s = np.asarray(s, dtype=float)
    if n == 1:
        return 1 - s, s
    if n == 2:
        return np.zeros_like(s), 1 - s
    if n == 3:
        return s, np.zeros_like(s)
    raise ValueError(f"local edge index must be 1, 2 or 3, got {n!r}")


def theta_map(n_minus, n_plus, x1, x2):
    """
    Maps points of reference edge n_minus onto reference edge n_plus such that
    both sides of an interior edge see the same physical point. The edge
    orientation is reversed.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    zero = np.zeros(np.broadcast(x1, x2).shape)
    if n_minus == 1:
        images = {1: (1 - x1, 1 - x2), 2: (zero, x2), 3: (x1, zero)}
    elif n_minus == 2:
        images = {1: (1 - x2, x2), 2: (zero, 1 - x2), 3: (x2, zero)}
    elif n_minus == 3:
        images = {1: (x1, 1 - x1), 2: (zero, x1), 3: (1 - x1, zero)}
    else:
        images = {}
    if n_plus not in images:
        raise ValueError(f"invalid local edge pair ({n_minus}, {n_plus})")
    t1, t2 = images[n_plus]
    return np.broadcast_to(t1, zero.shape).copy(), np.broadcast_to(t2, zero.shape).copy()


def required_orders(p):
    """
    Quadrature orders the solver requests for polynomial order p: 2p on
    triangles, 2p+1 on edges and 3p for triple products, each at least 1.
    """
    return tuple(sorted({max(2 * p, 1), 2 * p + 1, max(3 * p, 1)}))


@dataclass(frozen=True)
class BasisQuadCache:
    """
    Basis values at quadrature nodes, keyed by quadrature order.

    phi_2d[q]:     (R, N)          phi_i at 2D nodes
    grad_phi_2d[q]: (R, N, 2)      gradients at 2D nodes
    phi_1d[q]:     (R, N, 3)       phi_i o gamma_n at 1D nodes
    theta_phi_1d[q]: (R, N, 3, 3)  phi_i o theta_{n- n+} o gamma_{n-}
    """

    n_local: int
    phi_2d: Dict[int, np.ndarray] = field(default_factory=dict)
    grad_phi_2d: Dict[int, np.ndarray] = field(default_factory=dict)
    phi_1d: Dict[int, np.ndarray] = field(default_factory=dict)
    theta_phi_1d: Dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def orders(self):
        return tuple(sorted(self.phi_2d))


def build_basis_cache(n_local):
    p = order_from_n_local(n_local)
    cache = BasisQuadCache(n_local=n_local)
    for q_ord in required_orders(p):
        rule = quad_rule_2d(q_ord)
        cache.phi_2d[q_ord] = _frozen(phi_table(n_local, rule.x1, rule.x2))
        cache.grad_phi_2d[q_ord] = _frozen(grad_phi_table(n_local, rule.x1, rule.x2))

        rule_1d = quad_rule_1d(q_ord)
        on_edges = np.zeros((rule_1d.num_points, n_local, 3))
        on_neighbours = np.zeros((rule_1d.num_points, n_local, 3, 3))
        for n_minus in range(1, 4):
            g1, g2 = gamma_map(n_minus, rule_1d.points)
            on_edges[:, :, n_minus - 1] = phi_table(n_local, g1, g2)
            for n_plus in range(1, 4):
                t1, t2 = theta_map(n_minus, n_plus, g1, g2)
                on_neighbours[:, :, n_minus - 1, n_plus - 1] = phi_table(n_local, t1, t2)
        cache.phi_1d[q_ord] = _frozen(on_edges)
        cache.theta_phi_1d[q_ord] = _frozen(on_neighbours)
    return cache

"""
Fields in the broken polynomial space: representation matrices, L2
projection, Lagrange sampling and L2 errors.
"""
from dataclasses import dataclass

import numpy as np

from ldgdiffusion.discrete.basis import phi_table
from ldgdiffusion.discrete.quadrature import quad_rule_2d
from ldgdiffusion.exceptions import ShapeMismatchError
from ldgdiffusion.utils import order_from_n_local

# reference sampling nodes: vertices, then midpoints of local edges 1, 2, 3
LAGRANGE_NODES = {
    3: (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])),
    6: (np.array([0.0, 1.0, 0.0, 0.5, 0.0, 0.5]), np.array([0.0, 0.0, 1.0, 0.5, 0.5, 0.0])),
}


@dataclass
class DofMatrix:
    """K x N modal coefficients; row k represents the field on triangle k."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise ShapeMismatchError(
                f"representation matrix must be 2D, got shape {self.values.shape}"
            )
        order_from_n_local(self.values.shape[1])

    @property
    def num_t(self):
        return self.values.shape[0]

    @property
    def n_local(self):
        return self.values.shape[1]

    @classmethod
    def zeros(cls, num_t, n_local):
        return cls(np.zeros((num_t, n_local)))

    @classmethod
    def from_vector(cls, vector, n_local):
        vector = np.asarray(vector, dtype=float)
        if vector.ndim != 1 or vector.size % n_local:
            raise ShapeMismatchError(
                f"vector of length {vector.size} cannot hold {n_local} coefficients per triangle"
            )
        return cls(vector.reshape(-1, n_local).copy())

    def to_vector(self):
        """Stacked k-major vector of length K N."""
        return self.values.reshape(-1).copy()

    def evaluate(self, x1_hat, x2_hat):
        """Values at reference points on every triangle, shape (K, R)."""
        return self.values @ phi_table(self.n_local, x1_hat, x2_hat).T

    def _check(self, other):
        if self.values.shape != other.values.shape:
            raise ShapeMismatchError(
                f"shape {self.values.shape} does not match {other.values.shape}"
            )

    def __add__(self, other):
        self._check(other)
        return DofMatrix(self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return DofMatrix(self.values - other.values)

    def __mul__(self, scalar):
        return DofMatrix(self.values * float(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DofMatrix) and np.array_equal(self.values, other.values)


def default_quad_order(n_local):
    return max(2 * order_from_n_local(n_local), 1)


def project(mesh, func, q_ord, m_hat):
    """
    L2 projection of func(x1, x2) onto P_p(T_h).

    :param mesh: Mesh
    :param func: vectorized callable of physical coordinates
    :param q_ord: quadrature order, clamped below by 1
    :param m_hat: reference mass matrix (N x N)
    :return: DofMatrix
    """
    m_hat = np.asarray(m_hat, dtype=float)
    n_local = m_hat.shape[0]
    rule = quad_rule_2d(max(q_ord, 1))
    x1, x2 = mesh.map_reference(rule.x1, rule.x2)
    values = np.broadcast_to(np.asarray(func(x1, x2), dtype=float), x1.shape)
    basis = phi_table(n_local, rule.x1, rule.x2)
    rhs = (values * rule.weights) @ basis
    try:
        coefficients = np.linalg.solve(m_hat, rhs.T).T
    except np.linalg.LinAlgError:
        raise ShapeMismatchError("reference mass matrix is singular")
    return DofMatrix(coefficients)


def to_lagrange(dof):
    """
    Samples a field at Lagrange nodes: K x 3 for p <= 1 (constants
    replicated), K x 6 for p >= 2 (vertices, then edge midpoints).
    """
    n_local = dof.n_local
    if n_local == 1:
        return np.repeat(dof.values[:, :1] * np.sqrt(2.0), 3, axis=1)
    nodes = LAGRANGE_NODES[3 if n_local == 3 else 6]
    return dof.evaluate(*nodes)


def l2_error(mesh, dof, exact, q_ord):
    """
    L2 norm of c_h - c over the domain.

    :param exact: vectorized callable of physical coordinates
    """
    if dof.num_t != mesh.num_t:
        raise ShapeMismatchError(f"field has {dof.num_t} rows, mesh has {mesh.num_t} triangles")
    rule = quad_rule_2d(max(q_ord, 1))
    x1, x2 = mesh.map_reference(rule.x1, rule.x2)
    exact_values = np.broadcast_to(np.asarray(exact(x1, x2), dtype=float), x1.shape)
    diff = dof.evaluate(rule.x1, rule.x2) - exact_values
    return float(np.sqrt(2 * np.dot((diff ** 2) @ rule.weights, mesh.area_t)))


def integral(mesh, dof):
    """Integral of the field over the domain."""
    # int_T phi_1 = 2 |T| * sqrt(2) / 2, all other basis functions have zero mean
    return float(np.sqrt(2.0) * np.dot(mesh.area_t, dof.values[:, 0]))

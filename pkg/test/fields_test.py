import numpy as np
import pytest

from assembly_oracle import PhysicalBasis, element_points
from ldgdiffusion.discrete.basis import phi_table
from ldgdiffusion.discrete.fields import (
    DofMatrix,
    default_quad_order,
    integral,
    l2_error,
    project,
    to_lagrange,
)
from ldgdiffusion.discrete.reftensors import build_ref_tensors
from ldgdiffusion.exceptions import ShapeMismatchError, UnsupportedOrderError

SQ2 = np.sqrt(2.0)
RNG = np.random.default_rng(11)


def quadratic(x1, x2):
    return 1 + x1 - 2 * x2 + 3 * x1 * x2 - x2 ** 2


def oscillating(x1, x2):
    return np.cos(7 * x1) * np.cos(7 * x2)


def test_dof_matrix_vector_layout():
    dof = DofMatrix([[1, 2, 3], [4, 5, 6]])
    np.testing.assert_array_equal(dof.to_vector(), [1, 2, 3, 4, 5, 6])
    assert DofMatrix.from_vector(dof.to_vector(), 3) == dof


def test_dof_matrix_arithmetic():
    a = DofMatrix(np.ones((2, 3)))
    b = DofMatrix(np.full((2, 3), 2.0))
    assert (a + b) == DofMatrix(np.full((2, 3), 3.0))
    assert (b - a) == a
    assert 2 * a == b
    with pytest.raises(ShapeMismatchError):
        a + DofMatrix(np.ones((3, 3)))


def test_dof_matrix_rejects_bad_shapes():
    with pytest.raises(ShapeMismatchError):
        DofMatrix(np.ones(3))
    with pytest.raises(UnsupportedOrderError):
        DofMatrix(np.ones((2, 4)))
    with pytest.raises(ShapeMismatchError):
        DofMatrix.from_vector(np.ones(7), 3)


def test_project_constant(square_half):
    ref = build_ref_tensors(3)
    dof = project(square_half, lambda x1, x2: np.ones_like(x1), 2, ref.m_hat)
    np.testing.assert_allclose(dof.values, np.tile([1 / SQ2, 0, 0], (square_half.num_t, 1)), atol=1e-14)
    np.testing.assert_allclose(dof.evaluate(RNG.random(5) / 2, RNG.random(5) / 2), 1.0, atol=1e-14)


@pytest.mark.parametrize("n_local", [6, 10, 15])
def test_project_reproduces_polynomials(square_half, n_local):
    ref = build_ref_tensors(n_local)
    dof = project(square_half, quadratic, default_quad_order(n_local), ref.m_hat)
    x1_hat, x2_hat = RNG.random(100) / 2, RNG.random(100) / 2
    x1, x2 = square_half.map_reference(x1_hat, x2_hat)
    np.testing.assert_allclose(dof.evaluate(x1_hat, x2_hat), quadratic(x1, x2), atol=1e-12)


def test_project_matches_fine_quadrature_oracle(two_triangles):
    n_local = 6
    ref = build_ref_tensors(n_local)
    dof = project(two_triangles, oscillating, 14, ref.m_hat)
    basis = PhysicalBasis(two_triangles, n_local)
    for k in range(two_triangles.num_t):
        x, w = element_points(two_triangles, k)
        moments = (w * oscillating(x[:, 0], x[:, 1])) @ basis.values(k, x)
        # physical mass matrix of triangle k is 2 |T_k| I
        np.testing.assert_allclose(dof.values[k], moments / (2 * two_triangles.area_t[k]), atol=1e-10)


def test_project_is_idempotent(square_half):
    ref = build_ref_tensors(6)
    dof = project(square_half, oscillating, 4, ref.m_hat)
    again = project(
        square_half, _reconstruction(square_half, dof), 4, ref.m_hat
    )
    np.testing.assert_allclose(again.values, dof.values, atol=1e-13)


def _reconstruction(mesh, dof):
    """Continuous callable evaluating a discrete field by locating points."""
    inverse = np.linalg.inv(mesh.b)
    a1 = mesh.coord_v[mesh.v0t[:, 0]]

    def func(x1, x2):
        # points come from map_reference, so row k lies in triangle k
        xh = np.einsum("kij,kjr->kir", inverse, np.stack([x1 - a1[:, [0]], x2 - a1[:, [1]]], axis=1))
        return np.einsum("krn,kn->kr", phi_table(dof.n_local, xh[:, 0], xh[:, 1]), dof.values)

    return func


def test_best_approximation(square_half):
    ref = build_ref_tensors(3)
    dof = project(square_half, oscillating, 4, ref.m_hat)
    best = l2_error(square_half, dof, oscillating, 4)
    for _ in range(5):
        perturbed = dof + DofMatrix(1e-3 * RNG.standard_normal(dof.values.shape))
        assert l2_error(square_half, perturbed, oscillating, 4) >= best


def test_l2_error_of_zero_field(square_half):
    zero = DofMatrix.zeros(square_half.num_t, 3)
    assert l2_error(square_half, zero, lambda x1, x2: np.ones_like(x1), 2) == pytest.approx(1.0)
    assert l2_error(square_half, zero, lambda x1, x2: x1, 2) == pytest.approx(1 / np.sqrt(3))


def test_l2_error_of_exact_projection(square_half):
    ref = build_ref_tensors(6)
    dof = project(square_half, quadratic, 4, ref.m_hat)
    assert l2_error(square_half, dof, quadratic, 4) < 1e-12


def test_l2_error_rejects_mismatched_field(square_half):
    with pytest.raises(ShapeMismatchError):
        l2_error(square_half, DofMatrix.zeros(3, 1), quadratic, 2)


def test_integral(square_half):
    ref = build_ref_tensors(3)
    dof = project(square_half, lambda x1, x2: x1, 2, ref.m_hat)
    assert integral(square_half, dof) == pytest.approx(0.5)


def test_lagrange_constant(two_triangles):
    dof = DofMatrix([[1 / SQ2], [2 / SQ2]])
    np.testing.assert_allclose(to_lagrange(dof), [[1, 1, 1], [2, 2, 2]])


def test_lagrange_linear_vertices(square_half):
    ref = build_ref_tensors(3)
    dof = project(square_half, lambda x1, x2: 2 * x1 - x2, 2, ref.m_hat)
    expected = 2 * square_half.coord_v0t[:, :, 0] - square_half.coord_v0t[:, :, 1]
    np.testing.assert_allclose(to_lagrange(dof), expected, atol=1e-14)


@pytest.mark.parametrize("n_local", [6, 10, 15])
def test_lagrange_quadratic_sampling(square_half, n_local):
    ref = build_ref_tensors(n_local)
    dof = project(square_half, quadratic, default_quad_order(n_local), ref.m_hat)
    values = to_lagrange(dof)
    assert values.shape == (square_half.num_t, 6)
    corners = square_half.coord_v0t
    # midpoints of local edges 1, 2, 3 sit opposite vertices 1, 2, 3
    midpoints = 0.5 * (corners[:, [1, 2, 0]] + corners[:, [2, 0, 1]])
    nodes = np.concatenate([corners, midpoints], axis=1)
    np.testing.assert_allclose(values, quadratic(nodes[:, :, 0], nodes[:, :, 1]), atol=1e-12)

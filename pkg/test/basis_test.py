import numpy as np
import pytest

from ldgdiffusion.discrete.basis import grad_phi, grad_phi_table, phi, phi_table
from ldgdiffusion.discrete.quadrature import quad_rule_2d
from ldgdiffusion.exceptions import UnsupportedOrderError

RNG = np.random.default_rng(7)


def random_reference_points(n):
    x1, x2 = RNG.random(n), RNG.random(n)
    outside = x1 + x2 > 1
    x1[outside], x2[outside] = 1 - x1[outside], 1 - x2[outside]
    return x1, x2


def test_constant_basis_function():
    x1, x2 = random_reference_points(10)
    np.testing.assert_allclose(phi(1, x1, x2), np.sqrt(2))


def test_linear_values():
    assert phi(2, 0.0, 0.0) == pytest.approx(2.0)
    assert phi(2, 1.0, 0.0) == pytest.approx(-4.0)
    assert phi(3, 0.0, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_gradient_values():
    x1, x2 = random_reference_points(5)
    np.testing.assert_allclose(grad_phi(1, 1, x1, x2), 0.0)
    np.testing.assert_allclose(grad_phi(2, 1, x1, x2), -6.0)
    assert grad_phi(6, 2, 0.0, 0.0) == pytest.approx(-12.0 * np.sqrt(5.0))


def test_output_shape_follows_input():
    x1 = np.zeros((4, 3))
    assert phi(7, x1, x1).shape == (4, 3)
    assert grad_phi(5, 2, x1, x1).shape == (4, 3)
    assert phi_table(6, x1, x1).shape == (4, 3, 6)
    assert grad_phi_table(6, x1, x1).shape == (4, 3, 6, 2)


@pytest.mark.parametrize("i", [0, 16, 1.0, True])
def test_rejects_invalid_index(i):
    with pytest.raises(UnsupportedOrderError):
        phi(i, 0.0, 0.0)


def test_rejects_invalid_component():
    with pytest.raises(UnsupportedOrderError):
        grad_phi(2, 3, 0.0, 0.0)


def test_orthonormality():
    rule = quad_rule_2d(8)
    values = phi_table(15, rule.x1, rule.x2)
    gram = np.einsum("r,ri,rj->ij", rule.weights, values, values)
    np.testing.assert_allclose(gram, np.eye(15), atol=1e-12)


@pytest.mark.parametrize("i", range(1, 16))
@pytest.mark.parametrize("m", [1, 2])
def test_gradient_matches_central_differences(i, m):
    x1, x2 = random_reference_points(1000)
    eps = 1e-6
    if m == 1:
        numeric = (phi(i, x1 + eps, x2) - phi(i, x1 - eps, x2)) / (2 * eps)
    else:
        numeric = (phi(i, x1, x2 + eps) - phi(i, x1, x2 - eps)) / (2 * eps)
    np.testing.assert_allclose(grad_phi(i, m, x1, x2), numeric, atol=1e-5)


@pytest.mark.parametrize(
    "n_local, degree", [(1, 0), (3, 1), (6, 2), (10, 3), (15, 4)]
)
def test_hierarchical_degrees(n_local, degree):
    """phi_1..phi_N span the polynomials of total degree <= p."""
    rule = quad_rule_2d(2 * degree)
    values = phi_table(n_local, rule.x1, rule.x2)
    monomials = np.stack(
        [rule.x1 ** a * rule.x2 ** b for a in range(degree + 1) for b in range(degree + 1 - a)],
        axis=1,
    )
    # monomials are reproduced exactly by their projection
    coefficients = np.einsum("r,ri,rj->ij", rule.weights, values, monomials)
    np.testing.assert_allclose(values @ coefficients, monomials, atol=1e-11)

import numpy as np
import pytest

from ldgdiffusion.discrete.basis import grad_phi_table, phi_table
from ldgdiffusion.discrete.quadrature import gamma_map, quad_rule_1d, quad_rule_2d, theta_map
from ldgdiffusion.discrete.reftensors import build_ref_tensors

SQ2 = np.sqrt(2.0)


@pytest.fixture(scope="module", params=[1, 3, 6, 10, 15])
def ref(request):
    return build_ref_tensors(request.param)


def test_shapes(ref):
    n = ref.n_local
    assert ref.m_hat.shape == (n, n)
    assert ref.h_hat.shape == (n, n, 2)
    assert ref.g_hat.shape == (n, n, n, 2)
    assert ref.s_diag.shape == (n, n, 3)
    assert ref.s_offdiag.shape == (n, n, 3, 3)
    assert ref.r_diag.shape == (n, n, n, 3)
    assert ref.r_offdiag.shape == (n, n, n, 3, 3)


def test_mass_is_identity(ref):
    np.testing.assert_allclose(ref.m_hat, np.eye(ref.n_local), atol=1e-12)


def test_tensors_are_read_only(ref):
    with pytest.raises(ValueError):
        ref.m_hat[0, 0] = 2.0


def test_constant_basis_tensors():
    ref = build_ref_tensors(1)
    assert ref.p == 0
    np.testing.assert_allclose(ref.h_hat, 0.0)
    np.testing.assert_allclose(ref.g_hat, 0.0)
    np.testing.assert_allclose(ref.s_diag, 2.0)
    np.testing.assert_allclose(ref.s_offdiag, 2.0)
    np.testing.assert_allclose(ref.r_diag, 2 * SQ2)
    np.testing.assert_allclose(ref.r_offdiag, 2 * SQ2)


def test_linear_h_hat_entry():
    ref = build_ref_tensors(3)
    assert ref.h_hat[1, 0, 0] == pytest.approx(-3 * SQ2)


def test_s_diag_is_symmetric(ref):
    np.testing.assert_allclose(ref.s_diag, ref.s_diag.transpose(1, 0, 2), atol=1e-14)


def test_r_diag_is_symmetric(ref):
    np.testing.assert_allclose(ref.r_diag, ref.r_diag.transpose(1, 0, 2, 3), atol=1e-12)


def test_s_offdiag_swaps_sides(ref):
    # seen from the other triangle, the same edge pairing swaps roles
    np.testing.assert_allclose(ref.s_offdiag, ref.s_offdiag.transpose(1, 0, 3, 2), atol=1e-12)


def test_contracting_with_constant_reduces_triple_products(ref):
    """A coefficient equal to 1 has coefficients (1/sqrt(2), 0, ...)."""
    one = np.zeros(ref.n_local)
    one[0] = 1 / SQ2
    np.testing.assert_allclose(np.einsum("ijlm,l->ijm", ref.g_hat, one), ref.h_hat, atol=1e-12)
    np.testing.assert_allclose(np.einsum("ijln,l->ijn", ref.r_diag, one), ref.s_diag, atol=1e-12)
    np.testing.assert_allclose(
        np.einsum("ijlab,l->ijab", ref.r_offdiag, one), ref.s_offdiag, atol=1e-12
    )


def test_independent_oracle(ref):
    """Recomputes every tensor with rules two degrees above the required ones."""
    n = ref.n_local
    p = ref.p
    rule = quad_rule_2d(3 * p + 2)
    values = phi_table(n, rule.x1, rule.x2)
    grads = grad_phi_table(n, rule.x1, rule.x2)
    w = rule.weights
    np.testing.assert_allclose(
        ref.h_hat, np.einsum("r,rim,rj->ijm", w, grads, values), atol=1e-12
    )
    np.testing.assert_allclose(
        ref.g_hat, np.einsum("r,rim,rl,rj->ijlm", w, grads, values, values), atol=1e-12
    )

    rule_1d = quad_rule_1d(3 * p + 3)
    for a in range(3):
        g1, g2 = gamma_map(a + 1, rule_1d.points)
        inner = phi_table(n, g1, g2)
        np.testing.assert_allclose(
            ref.s_diag[:, :, a],
            np.einsum("r,ri,rj->ij", rule_1d.weights, inner, inner),
            atol=1e-12,
        )
        for b in range(3):
            outer = phi_table(n, *theta_map(a + 1, b + 1, g1, g2))
            np.testing.assert_allclose(
                ref.s_offdiag[:, :, a, b],
                np.einsum("r,ri,rj->ij", rule_1d.weights, inner, outer),
                atol=1e-12,
            )
            np.testing.assert_allclose(
                ref.r_offdiag[:, :, :, a, b],
                np.einsum("r,ri,rl,rj->ijl", rule_1d.weights, inner, outer, outer),
                atol=1e-12,
            )

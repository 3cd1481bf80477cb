import numpy as np
import pytest

from assembly_oracle import OracleAssembly
from conftest import SQ3
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
    interior_selector,
    partition_selectors,
)
from ldgdiffusion.assembly.triplets import TripletAccumulator
from ldgdiffusion.discrete.fields import DofMatrix, project
from ldgdiffusion.discrete.reftensors import build_ref_tensors
from ldgdiffusion.exceptions import BoundaryConditionError, ShapeMismatchError
from ldgdiffusion.mesh import generate_grid_data
from ldgdiffusion.system.manufactured import MANUFACTURED_BOUNDARY_MAP

SQ2 = np.sqrt(2.0)
TOL = 1e-11

REFS = {n: build_ref_tensors(n) for n in (1, 3, 6)}


def dense(matrix):
    return matrix.toarray()


def no_selector(mesh):
    return np.zeros((mesh.num_t, 3), dtype=bool)


@pytest.fixture(params=["two_triangles", "square"])
def case(request, two_triangles_tagged, square_half):
    if request.param == "two_triangles":
        return two_triangles_tagged, {1: "dirichlet", 2: "neumann"}
    return square_half, dict(MANUFACTURED_BOUNDARY_MAP)


def linear_d(x1, x2):
    return 1 + x1


def exp_d(x1, x2):
    return np.exp(x1 + x2)


def test_partition_selectors_cover_all_slots(case):
    mesh, boundary_map = case
    interior, dirichlet, neumann = partition_selectors(mesh, boundary_map)
    total = interior.astype(int) + dirichlet.astype(int) + neumann.astype(int)
    np.testing.assert_array_equal(total, 1)


def test_partition_selectors_rejects_untagged(two_triangles):
    with pytest.raises(BoundaryConditionError):
        partition_selectors(two_triangles, {1: "dirichlet"})


def test_partition_selectors_rejects_unmapped(two_triangles_tagged):
    with pytest.raises(BoundaryConditionError, match=r"\[2\]"):
        partition_selectors(two_triangles_tagged, {1: "dirichlet"})


def test_triplet_accumulator_sums_duplicates():
    acc = TripletAccumulator(2, 1)
    acc.add_blocks(np.array([0, 0]), np.array([1, 1]), np.ones((2, 1, 1)))
    acc.add_blocks(np.array([1]), np.array([1]), np.full((1, 1, 1), 2.0), scale=-1.0)
    np.testing.assert_allclose(dense(acc.to_csr()), [[0, 2], [0, -2]])


def test_mass_two_triangles(two_triangles):
    mass = assemble_mass(two_triangles, REFS[1].m_hat)
    np.testing.assert_allclose(dense(mass), np.diag([2 * SQ3, 2 * SQ3]))


def test_mass_unit_triangle(unit_triangle):
    np.testing.assert_allclose(dense(assemble_mass(unit_triangle, REFS[3].m_hat)), np.eye(3), atol=1e-14)


def test_dphi_phi_unit_triangle(unit_triangle):
    h1, h2 = assemble_dphi_phi(unit_triangle, REFS[6].h_hat)
    np.testing.assert_allclose(dense(h1), REFS[6].h_hat[:, :, 0], atol=1e-14)
    np.testing.assert_allclose(dense(h2), REFS[6].h_hat[:, :, 1], atol=1e-14)


def test_dphi_phi_vanishes_for_constants(two_triangles):
    h1, h2 = assemble_dphi_phi(two_triangles, REFS[1].h_hat)
    assert abs(h1).sum() == 0 and abs(h2).sum() == 0


def test_jump_two_triangles(two_triangles):
    mesh = two_triangles
    interior = interior_selector(mesh)
    s, s_d = assemble_edge_jump(mesh, interior, mesh.is_boundary_e0t, REFS[1].s_diag, REFS[1].s_offdiag)
    np.testing.assert_allclose(dense(s), [[2, -2], [-2, 2]], atol=1e-14)
    np.testing.assert_allclose(dense(s_d), np.diag([4, 4]), atol=1e-14)


def test_jump_annihilates_constants(square_half):
    ref = REFS[3]
    s, _ = assemble_edge_jump(
        square_half, interior_selector(square_half), no_selector(square_half), ref.s_diag, ref.s_offdiag
    )
    constant = project(square_half, lambda x1, x2: np.full_like(x1, 3.0), 2, ref.m_hat)
    np.testing.assert_allclose(s @ constant.to_vector(), 0.0, atol=1e-13)


def test_average_two_triangles(two_triangles):
    mesh = two_triangles
    interior = interior_selector(mesh)
    q1, _ = assemble_edge_avg_nu(mesh, 0, interior, no_selector(mesh), REFS[1].s_diag, REFS[1].s_offdiag)
    q2, _ = assemble_edge_avg_nu(mesh, 1, interior, no_selector(mesh), REFS[1].s_diag, REFS[1].s_offdiag)
    np.testing.assert_allclose(dense(q1), [[2, 2], [-2, -2]], atol=1e-14)
    np.testing.assert_allclose(dense(q2), 0.0, atol=1e-14)


def test_neumann_average_unit_triangle(unit_triangle):
    mesh = unit_triangle
    south = np.array([[False, False, True]])
    _, q_n = assemble_edge_avg_nu(mesh, 1, no_selector(mesh), south, REFS[1].s_diag, REFS[1].s_offdiag)
    np.testing.assert_allclose(dense(q_n), [[-2.0]], atol=1e-14)


def test_average_rejects_component(two_triangles):
    with pytest.raises(ValueError):
        assemble_edge_avg_nu(two_triangles, 2, no_selector(two_triangles), no_selector(two_triangles), REFS[1].s_diag, REFS[1].s_offdiag)


def test_selector_shape_is_checked(two_triangles):
    with pytest.raises(ShapeMismatchError):
        assemble_edge_jump(two_triangles, np.zeros((3, 3), dtype=bool), no_selector(two_triangles), REFS[1].s_diag, REFS[1].s_offdiag)


def test_coefficient_shape_is_checked(two_triangles):
    with pytest.raises(ShapeMismatchError):
        assemble_dphi_phi_coeff(two_triangles, REFS[3].g_hat, DofMatrix.zeros(3, 3))


def test_neumann_vector_checks_coefficient_shape(two_triangles):
    everything = np.ones((2, 3), dtype=bool)
    with pytest.raises(ShapeMismatchError):
        assemble_vec_neumann(two_triangles, everything, DofMatrix.zeros(3, 3), one, 0.0)
    k_n = assemble_vec_neumann(two_triangles, everything, DofMatrix.zeros(2, 3), one, 0.0)
    assert k_n.shape == (6,)


@pytest.mark.parametrize("n_local", [1, 3, 6])
def test_constant_coefficient_reduces_to_plain_operators(square_half, n_local):
    mesh = square_half
    ref = REFS[n_local]
    interior, dirichlet, neumann = partition_selectors(mesh, dict(MANUFACTURED_BOUNDARY_MAP))
    one = project(mesh, lambda x1, x2: np.ones_like(x1), 2, ref.m_hat)
    g = assemble_dphi_phi_coeff(mesh, ref.g_hat, one)
    h = assemble_dphi_phi(mesh, ref.h_hat)
    for m in (0, 1):
        np.testing.assert_allclose(dense(g[m]), dense(h[m]), atol=1e-12)
        r, r_d = assemble_edge_avg_coeff_nu(mesh, m, one, interior, dirichlet, ref.r_diag, ref.r_offdiag)
        q, _ = assemble_edge_avg_nu(mesh, m, interior, neumann, ref.s_diag, ref.s_offdiag)
        _, q_d = assemble_edge_avg_nu(mesh, m, no_selector(mesh), dirichlet, ref.s_diag, ref.s_offdiag)
        np.testing.assert_allclose(dense(r), dense(q), atol=1e-12)
        np.testing.assert_allclose(dense(r_d), dense(q_d), atol=1e-12)


@pytest.mark.parametrize("n_local", [1, 3, 6])
def test_zero_coefficient_gives_zero_operators(two_triangles, n_local):
    ref = REFS[n_local]
    zero = DofMatrix.zeros(two_triangles.num_t, n_local)
    everything = np.ones((2, 3), dtype=bool)
    for m in (0, 1):
        assert abs(assemble_dphi_phi_coeff(two_triangles, ref.g_hat, zero)[m]).sum() == 0
        r, r_d = assemble_edge_avg_coeff_nu(two_triangles, m, zero, everything, everything, ref.r_diag, ref.r_offdiag)
        assert abs(r).sum() == 0 and abs(r_d).sum() == 0


def test_average_closes_over_element_boundary(square_half):
    """For a constant field every triangle sees sum_n nu^m |E_n| = 0."""
    mesh = square_half
    ref = REFS[1]
    constant = np.ones(mesh.num_t)
    for m in (0, 1):
        q, q_n = assemble_edge_avg_nu(mesh, m, interior_selector(mesh), mesh.is_boundary_e0t, ref.s_diag, ref.s_offdiag)
        one_sided = np.einsum("kn,kn->k", mesh.area_e0t, mesh.nu_e0t[:, :, m])
        np.testing.assert_allclose(one_sided, 0.0, atol=1e-14)
        np.testing.assert_allclose((q + q_n) @ constant, 0.0, atol=1e-13)


@pytest.mark.parametrize("n_local", [1, 3, 6])
def test_operators_match_oracle(case, n_local):
    mesh, boundary_map = case
    ref = REFS[n_local]
    selectors = partition_selectors(mesh, boundary_map)
    interior, dirichlet, neumann = selectors
    d_disc = project(mesh, exp_d, 2 * ref.p + 6, ref.m_hat)
    oracle = OracleAssembly(mesh, n_local, selectors, d_values=d_disc.values)

    np.testing.assert_allclose(dense(assemble_mass(mesh, ref.m_hat)), oracle.mass(), atol=TOL)
    h = assemble_dphi_phi(mesh, ref.h_hat)
    g = assemble_dphi_phi_coeff(mesh, ref.g_hat, d_disc)
    s, s_d = assemble_edge_jump(mesh, interior, dirichlet, ref.s_diag, ref.s_offdiag)
    np.testing.assert_allclose(dense(s), oracle.jump(interior, interior=True), atol=TOL)
    np.testing.assert_allclose(dense(s_d), oracle.jump(dirichlet, interior=False), atol=TOL)
    for m in (0, 1):
        np.testing.assert_allclose(dense(h[m]), oracle.dphi_phi(m), atol=TOL)
        np.testing.assert_allclose(dense(g[m]), oracle.dphi_phi(m, coefficient=True), atol=TOL)
        q, q_n = assemble_edge_avg_nu(mesh, m, interior, neumann, ref.s_diag, ref.s_offdiag)
        np.testing.assert_allclose(dense(q), oracle.average(m, interior, True), atol=TOL)
        np.testing.assert_allclose(dense(q_n), oracle.average(m, neumann, False), atol=TOL)
        r, r_d = assemble_edge_avg_coeff_nu(mesh, m, d_disc, interior, dirichlet, ref.r_diag, ref.r_offdiag)
        np.testing.assert_allclose(dense(r), oracle.average(m, interior, True, coefficient=True), atol=TOL)
        np.testing.assert_allclose(dense(r_d), oracle.average(m, dirichlet, False, coefficient=True), atol=TOL)


@pytest.mark.parametrize("n_local", [1, 3, 6])
def test_vectors_match_oracle(case, n_local):
    mesh, boundary_map = case
    ref = REFS[n_local]
    selectors = partition_selectors(mesh, boundary_map)
    _, dirichlet, neumann = selectors
    d_disc = project(mesh, linear_d, 2, ref.m_hat)
    oracle = OracleAssembly(mesh, n_local, selectors, d_values=d_disc.values)

    def c_d(t, x1, x2):
        return 1 + t + 2 * x1 - x2

    def g_n(t, x1, x2):
        return 0.5 - x2 + t * x1

    t = 0.3
    j1, j2 = assemble_vec_dirichlet_nu(mesh, dirichlet, c_d, t, n_local)
    np.testing.assert_allclose(j1, oracle.boundary_vector(dirichlet, c_d, t, "dirichlet_nu", 0), atol=TOL)
    np.testing.assert_allclose(j2, oracle.boundary_vector(dirichlet, c_d, t, "dirichlet_nu", 1), atol=TOL)
    np.testing.assert_allclose(
        assemble_vec_dirichlet(mesh, dirichlet, c_d, t, n_local),
        oracle.boundary_vector(dirichlet, c_d, t, "dirichlet"),
        atol=TOL,
    )
    np.testing.assert_allclose(
        assemble_vec_neumann(mesh, neumann, d_disc, g_n, t),
        oracle.boundary_vector(neumann, g_n, t, "neumann"),
        atol=TOL,
    )
    f_disc = project(mesh, lambda x1, x2: np.sin(x1) * x2, 2 * ref.p, ref.m_hat)
    np.testing.assert_allclose(
        assemble_vec_source(assemble_mass(mesh, ref.m_hat), f_disc),
        oracle.source(f_disc.values),
        atol=TOL,
    )


@pytest.fixture
def right_triangle_side_two():
    # local edge 2 runs from (0, 0) to (2, 0): nu = (0, -1), |E| = 2
    return generate_grid_data([(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)], [[0, 1, 2]])


def one(t, x1, x2):
    return np.ones_like(x1)


def test_dirichlet_nu_single_edge(right_triangle_side_two):
    selector = np.array([[False, False, True]])
    j1, j2 = assemble_vec_dirichlet_nu(right_triangle_side_two, selector, one, 0.0, 1)
    assert j1[0] == pytest.approx(0.0, abs=1e-15)
    assert j2[0] == pytest.approx(-2 * SQ2)


def test_dirichlet_two_edges(right_triangle_side_two):
    selector = np.array([[False, True, True]])
    k_d = assemble_vec_dirichlet(right_triangle_side_two, selector, one, 0.0, 1)
    assert k_d[0] == pytest.approx(2 * SQ2)


def test_neumann_single_edge(right_triangle_side_two):
    mesh = right_triangle_side_two
    d_disc = project(mesh, lambda x1, x2: np.ones_like(x1), 1, REFS[1].m_hat)
    k_n = assemble_vec_neumann(mesh, np.array([[False, False, True]]), d_disc, one, 0.0)
    assert k_n[0] == pytest.approx(2 * SQ2)


def test_zero_boundary_data(square_half):
    selector = square_half.is_boundary_e0t

    def zero(t, x1, x2):
        return np.zeros_like(x1)

    j1, j2 = assemble_vec_dirichlet_nu(square_half, selector, zero, 0.0, 3)
    assert not j1.any() and not j2.any()
    assert not assemble_vec_dirichlet(square_half, selector, zero, 0.0, 3).any()


def test_linearity_in_coefficient(square_half):
    ref = REFS[3]
    mesh = square_half
    interior, dirichlet, _ = partition_selectors(mesh, dict(MANUFACTURED_BOUNDARY_MAP))
    d1 = project(mesh, exp_d, 4, ref.m_hat)
    d2 = project(mesh, linear_d, 4, ref.m_hat)
    combined = d1 + 2.0 * d2
    for m in (0, 1):
        r1, _ = assemble_edge_avg_coeff_nu(mesh, m, d1, interior, dirichlet, ref.r_diag, ref.r_offdiag)
        r2, _ = assemble_edge_avg_coeff_nu(mesh, m, d2, interior, dirichlet, ref.r_diag, ref.r_offdiag)
        r, _ = assemble_edge_avg_coeff_nu(mesh, m, combined, interior, dirichlet, ref.r_diag, ref.r_offdiag)
        np.testing.assert_allclose(dense(r), dense(r1 + 2.0 * r2), atol=1e-13)


def test_assembly_is_reproducible(square_half):
    ref = REFS[6]
    interior = interior_selector(square_half)
    first, _ = assemble_edge_avg_nu(square_half, 0, interior, no_selector(square_half), ref.s_diag, ref.s_offdiag)
    second, _ = assemble_edge_avg_nu(square_half, 0, interior, no_selector(square_half), ref.s_diag, ref.s_offdiag)
    np.testing.assert_array_equal(first.indptr, second.indptr)
    np.testing.assert_array_equal(first.indices, second.indices)
    np.testing.assert_array_equal(first.data, second.data)

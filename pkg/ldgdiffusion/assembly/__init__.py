from .selectors import (
    interior_selector,
    boundary_selector,
    partition_selectors,
)
from .triplets import TripletAccumulator
from .operators import (
    assemble_mass,
    assemble_dphi_phi,
    assemble_dphi_phi_coeff,
    assemble_edge_jump,
    assemble_edge_avg_nu,
    assemble_edge_avg_coeff_nu,
)
from .vectors import (
    assemble_vec_dirichlet_nu,
    assemble_vec_dirichlet,
    assemble_vec_neumann,
    assemble_vec_source,
)

__all__ = [
    "interior_selector",
    "boundary_selector",
    "partition_selectors",
    "TripletAccumulator",
    "assemble_mass",
    "assemble_dphi_phi",
    "assemble_dphi_phi_coeff",
    "assemble_edge_jump",
    "assemble_edge_avg_nu",
    "assemble_edge_avg_coeff_nu",
    "assemble_vec_dirichlet_nu",
    "assemble_vec_dirichlet",
    "assemble_vec_neumann",
    "assemble_vec_source",
]

from .basis import phi, grad_phi, phi_table, grad_phi_table
from .quadrature import (
    QuadRule1D,
    QuadRule2D,
    BasisQuadCache,
    quad_rule_1d,
    quad_rule_2d,
    gamma_map,
    theta_map,
    build_basis_cache,
)
from .reftensors import RefTensors, build_ref_tensors
from .fields import DofMatrix, project, to_lagrange, l2_error, integral

__all__ = [
    "phi",
    "grad_phi",
    "phi_table",
    "grad_phi_table",
    "QuadRule1D",
    "QuadRule2D",
    "BasisQuadCache",
    "quad_rule_1d",
    "quad_rule_2d",
    "gamma_map",
    "theta_map",
    "build_basis_cache",
    "RefTensors",
    "build_ref_tensors",
    "DofMatrix",
    "project",
    "to_lagrange",
    "l2_error",
    "integral",
]

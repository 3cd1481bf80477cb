"""
Local discontinuous Galerkin solver for the time-dependent diffusion equation

    dc/dt + div(d z) = f,  z = -grad c

on triangulations of 2D domains, with Dirichlet and Neumann boundaries.
"""

__version__ = "0.1.0"

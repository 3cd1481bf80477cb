"""
Stationary verification problem with a known solution on the unit square:

    c(x) = cos(7 x1) cos(7 x2),  d(x) = exp(x1 + x2),  z = -grad c,
    f = div(d z) = d (z1 + z2 + 98 c),  g_N = z . nu on the south and north sides.
"""
from ldgdiffusion.constants import (
    DIRICHLET_TAG,
    NEUMANN_TAG,
    SQUARE_EAST_ID,
    SQUARE_NORTH_ID,
    SQUARE_SOUTH_ID,
    SQUARE_WEST_ID,
)
from ldgdiffusion.exprlang import ExprFunction
from ldgdiffusion.system.problem import ProblemSpec

EXACT_C = "cos(7*x1)*cos(7*x2)"
EXACT_Z1 = "7*sin(7*x1)*cos(7*x2)"
EXACT_Z2 = "7*cos(7*x1)*sin(7*x2)"
COEFFICIENT_D = "exp(x1+x2)"

MANUFACTURED_EXPRESSIONS = {
    "d": COEFFICIENT_D,
    "f": f"exp(x1+x2)*({EXACT_Z1} + {EXACT_Z2} + 98*{EXACT_C})",
    "c_d": EXACT_C,
    # outward normal is (0, -1) on the south side and (0, 1) on the north side
    "g_n": f"(2*(x2 > 0.5) - 1)*{EXACT_Z2}",
    "c0": EXACT_C,
}

MANUFACTURED_BOUNDARY_MAP = {
    SQUARE_SOUTH_ID: NEUMANN_TAG,
    SQUARE_EAST_ID: DIRICHLET_TAG,
    SQUARE_NORTH_ID: NEUMANN_TAG,
    SQUARE_WEST_ID: DIRICHLET_TAG,
}


def manufactured_problem(eta=1.0):
    """ProblemSpec of the stationary verification problem."""
    functions = {k: ExprFunction(v) for k, v in MANUFACTURED_EXPRESSIONS.items()}
    return ProblemSpec(
        eta=eta,
        boundary_map=dict(MANUFACTURED_BOUNDARY_MAP),
        stationary=True,
        **functions,
    )


def exact_solution():
    """(c, z1, z2) as callables of (x1, x2)."""
    return tuple(ExprFunction(e).at_time(0.0) for e in (EXACT_C, EXACT_Z1, EXACT_Z2))

DIRICHLET_TAG = "dirichlet"
NEUMANN_TAG = "neumann"
BOUNDARY_KINDS = (DIRICHLET_TAG, NEUMANN_TAG)

# id_e value of interior edges; t0e marker for "no second triangle"
INTERIOR_EDGE_ID = 0
NO_TRIANGLE = -1

MAX_POLY_ORDER = 4
MAX_QUAD_ORDER_1D = 17
POLY_ORDER_MESSAGE = "Polynomial order must be zero to four."

SQUARE_SOUTH_ID = 1
SQUARE_EAST_ID = 2
SQUARE_NORTH_ID = 3
SQUARE_WEST_ID = 4

VTK_LINEAR_TRIANGLE = 5
VTK_QUADRATIC_TRIANGLE = 22

SOLVER_RESIDUAL_TOL = 1e-10

THREADS_ENV = "LDG_THREADS"
LOG_LEVEL_ENV = "LDG_LOG_LEVEL"

RUN_STATE_FILE = "run_state.json"
RUN_LOG_FILE = "simulation.log"
CONVERGENCE_CSV_FILE = "convergence.csv"
CONVERGENCE_PLOT_FILE = "convergence.png"
CONVERGENCE_CSV_HEADER = "p,j,h,K,error,alpha"

MODE_TRANSIENT = "transient"
MODE_STATIONARY = "stationary"

MAIN_PROBLEM = "paper-main"
CONVERGENCE_PROBLEM = "paper-convergence"

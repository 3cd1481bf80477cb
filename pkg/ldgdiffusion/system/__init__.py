from .problem import ContinuousFunction, ProblemSpec, SystemState, zero_function
from .blocks import BlockSet, StaticBlocks, assemble_static_blocks, build_blocks
from .stepping import euler_step, initial_state, solve_sparse, solve_stationary
from .manufactured import exact_solution, manufactured_problem

__all__ = [
    "ContinuousFunction",
    "ProblemSpec",
    "SystemState",
    "zero_function",
    "BlockSet",
    "StaticBlocks",
    "assemble_static_blocks",
    "build_blocks",
    "euler_step",
    "initial_state",
    "solve_sparse",
    "solve_stationary",
    "exact_solution",
    "manufactured_problem",
]

from .base import Simulation
from .transient import TimeSteppingSimulation
from .stationary import StationarySimulation
from .convergence import ConvergenceStudy, estimated_order, plot_convergence

__all__ = [
    "Simulation",
    "TimeSteppingSimulation",
    "StationarySimulation",
    "ConvergenceStudy",
    "estimated_order",
    "plot_convergence",
]

"""
Problem description and the state vector of the block system.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

from ldgdiffusion.constants import BOUNDARY_KINDS
from ldgdiffusion.discrete.fields import DofMatrix
from ldgdiffusion.exceptions import BoundaryConditionError, ConfigError

# f(t, x1, x2) evaluated on arrays of physical coordinates
ContinuousFunction = Callable[[float, np.ndarray, np.ndarray], np.ndarray]


def zero_function(t, x1, x2):
    return np.zeros(np.broadcast(x1, x2).shape)


@dataclass
class ProblemSpec:
    d: ContinuousFunction
    f: ContinuousFunction = zero_function
    c_d: ContinuousFunction = zero_function
    g_n: ContinuousFunction = zero_function
    c0: ContinuousFunction = zero_function
    eta: float = 1.0
    boundary_map: Dict[int, str] = field(default_factory=dict)
    t_end: float = 1.0
    num_steps: int = 1
    stationary: bool = False

    def __post_init__(self):
        if not self.eta > 0:
            raise ConfigError("discretization.eta", f"penalty must be positive, got {self.eta}")
        if not self.stationary:
            if not self.t_end > 0:
                raise ConfigError("time.t_end", f"must be positive, got {self.t_end}")
            if int(self.num_steps) != self.num_steps or self.num_steps < 1:
                raise ConfigError("time.num_steps", f"must be >= 1, got {self.num_steps}")
        for boundary_id, kind in self.boundary_map.items():
            if kind not in BOUNDARY_KINDS:
                raise BoundaryConditionError(
                    f"boundary {boundary_id} has unknown condition '{kind}'"
                )

    @property
    def dt(self):
        return self.t_end / self.num_steps

    def time_at(self, step):
        return step * self.dt


@dataclass
class SystemState:
    """y = [Z^1; Z^2; C] at time t after `step` time steps."""

    y: np.ndarray
    t: float = 0.0
    step: int = 0

    def _block(self, index, n_local):
        size = self.y.size // 3
        return DofMatrix.from_vector(self.y[index * size : (index + 1) * size], n_local)

    def concentration(self, n_local):
        return self._block(2, n_local)

    def flux(self, n_local):
        return self._block(0, n_local), self._block(1, n_local)

    @classmethod
    def from_fields(cls, c, z1=None, z2=None, t=0.0, step=0):
        z1 = z1 if z1 is not None else DofMatrix.zeros(c.num_t, c.n_local)
        z2 = z2 if z2 is not None else DofMatrix.zeros(c.num_t, c.n_local)
        return cls(
            y=np.concatenate([z1.to_vector(), z2.to_vector(), c.to_vector()]), t=t, step=step
        )

    def to_dict(self):
        return {"t": self.t, "step": self.step, "num_unknowns": int(self.y.size)}

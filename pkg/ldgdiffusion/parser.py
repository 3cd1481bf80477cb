"""
Run configuration files.

A config file is a dotenv-style list of `section.key=value` lines; `#` starts
a comment and values may be quoted:

    run.problem=main
    mesh.source=square
    mesh.h_max=0.125
    discretization.p=2
    coefficients.d="(x1 > 0.25 and x1 < 0.75 and x2 > 0.25 and x2 < 0.75) + 0.01"
    boundary.map="1: neumann, 3: neumann, 2: dirichlet, 4: dirichlet"

`run.problem` loads a builtin problem first; the remaining keys override it.
"""
import copy
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, List, Optional

from dotenv import dotenv_values

from ldgdiffusion.constants import (
    CONVERGENCE_PROBLEM,
    MAIN_PROBLEM,
    MODE_STATIONARY,
    MODE_TRANSIENT,
    POLY_ORDER_MESSAGE,
)
from ldgdiffusion.exceptions import ConfigError, ExprError
from ldgdiffusion.exprlang import ExprFunction
from ldgdiffusion.system.manufactured import (
    EXACT_C,
    MANUFACTURED_BOUNDARY_MAP,
    MANUFACTURED_EXPRESSIONS,
)
from ldgdiffusion.system.problem import ProblemSpec
from ldgdiffusion.utils import format_boundary_map, parse_boundary_map, parse_int_list

EXPRESSION_KEYS = ("d", "f", "c_d", "g_n", "c0")

# config key -> RunConfig attribute
KEY_MAP = {
    "run.problem": "problem",
    "run.mode": "mode",
    "mesh.source": "mesh_source",
    "mesh.h_max": "h_max",
    "mesh.refinements": "refinements",
    "discretization.p": "p",
    "discretization.eta": "eta",
    "time.t_end": "t_end",
    "time.num_steps": "num_steps",
    "boundary.map": "boundary_map",
    "output.basename": "output_basename",
    "output.every": "output_every",
    "output.dir": "output_dir",
    "output.variable": "var_name",
    "convergence.levels": "levels",
    "convergence.orders": "orders",
    "convergence.exact_c": "exact_c",
    **{f"coefficients.{k}": k for k in EXPRESSION_KEYS},
}
FIELD_TO_KEY = {v: k for k, v in KEY_MAP.items()}

# short names accepted for the builtin problems
PROBLEM_ALIASES = {"main": MAIN_PROBLEM, "convergence": CONVERGENCE_PROBLEM}

BUILTIN_PROBLEMS = {
    MAIN_PROBLEM: {
        "run.mode": MODE_TRANSIENT,
        "mesh.source": "square",
        "mesh.h_max": "0.125",
        "discretization.p": "2",
        "discretization.eta": "1",
        "time.t_end": repr(math.pi),
        "time.num_steps": "20",
        "boundary.map": "1: neumann, 3: neumann, 2: dirichlet, 4: dirichlet",
        "coefficients.d": "(x1 < 3/4 and x1 > 1/4 and x2 < 3/4 and x2 > 1/4) + 0.01",
        "coefficients.f": "0.1*t",
        "coefficients.c_d": "sin(2*pi*x2 + t)",
        "coefficients.g_n": "x2",
        "coefficients.c0": "sin(x1)*cos(x2)",
        "output.basename": "solution",
    },
    CONVERGENCE_PROBLEM: {
        "run.mode": MODE_STATIONARY,
        "mesh.source": "square",
        "mesh.h_max": repr(1 / 3),
        "discretization.eta": "1",
        "boundary.map": format_boundary_map(MANUFACTURED_BOUNDARY_MAP),
        **{f"coefficients.{k}": v for k, v in MANUFACTURED_EXPRESSIONS.items()},
        "convergence.exact_c": EXACT_C,
        "convergence.levels": "0-4",
        "convergence.orders": "0-4",
    },
}


@dataclass
class RunConfig:
    problem: Optional[str] = None
    mode: str = MODE_TRANSIENT
    mesh_source: str = "square"
    h_max: float = 0.125
    refinements: int = 0
    p: int = 1
    eta: float = 1.0
    t_end: float = 1.0
    num_steps: int = 10
    boundary_map: Dict[int, str] = field(default_factory=dict)
    d: str = "1"
    f: str = "0"
    c_d: str = "0"
    g_n: str = "0"
    c0: str = "0"
    output_basename: str = "solution"
    output_every: int = 1
    output_dir: str = "output"
    var_name: str = "c"
    levels: List[int] = field(default_factory=lambda: list(range(5)))
    orders: List[int] = field(default_factory=lambda: list(range(5)))
    exact_c: Optional[str] = None

    def validate(self):
        if self.mode not in (MODE_TRANSIENT, MODE_STATIONARY):
            raise ConfigError("run.mode", f"expected transient or stationary, got '{self.mode}'")
        if isinstance(self.p, bool) or not isinstance(self.p, int) or not 0 <= self.p <= 4:
            raise ConfigError("discretization.p", POLY_ORDER_MESSAGE)
        if self.mesh_source == "square" and not self.h_max > 0:
            raise ConfigError("mesh.h_max", f"must be positive, got {self.h_max}")
        if self.refinements < 0:
            raise ConfigError("mesh.refinements", f"must be >= 0, got {self.refinements}")
        if not self.eta > 0:
            raise ConfigError("discretization.eta", f"must be positive, got {self.eta}")
        if not self.t_end > 0:
            raise ConfigError("time.t_end", f"must be positive, got {self.t_end}")
        if self.num_steps < 1:
            raise ConfigError("time.num_steps", f"must be >= 1, got {self.num_steps}")
        if self.output_every < 1:
            raise ConfigError("output.every", f"must be >= 1, got {self.output_every}")
        if any(p < 0 or p > 4 for p in self.orders):
            raise ConfigError("convergence.orders", POLY_ORDER_MESSAGE)
        if any(j < 0 for j in self.levels):
            raise ConfigError("convergence.levels", "levels must be >= 0")
        for name in EXPRESSION_KEYS + (("exact_c",) if self.exact_c else ()):
            try:
                ExprFunction(getattr(self, name))
            except ExprError as e:
                raise ConfigError(FIELD_TO_KEY[name], str(e))
        return self

    def problem_spec(self):
        functions = {k: ExprFunction(getattr(self, k)) for k in EXPRESSION_KEYS}
        return ProblemSpec(
            eta=self.eta,
            boundary_map=dict(self.boundary_map),
            t_end=self.t_end,
            num_steps=self.num_steps,
            stationary=self.mode == MODE_STATIONARY,
            **functions,
        )

    def to_dict(self):
        return {f.name: copy.deepcopy(getattr(self, f.name)) for f in fields(self)}


def _convert(key, value):
    name = KEY_MAP[key]
    try:
        if name in ("h_max", "eta", "t_end"):
            return float(value)
        if name in ("refinements", "p", "num_steps", "output_every"):
            return int(value)
    except ValueError:
        raise ConfigError(key, f"cannot convert '{value}'")
    if name == "boundary_map":
        return parse_boundary_map(value)
    if name in ("levels", "orders"):
        return parse_int_list(key, value)
    return value.strip()


def run_config_from_values(values):
    """
    Builds a RunConfig from flat `section.key` strings, applying the builtin
    problem named by run.problem first.
    """
    values = {k: v for k, v in values.items() if v is not None}
    unknown = sorted(set(values) - set(KEY_MAP))
    if unknown:
        raise ConfigError(unknown[0], "unknown configuration key")
    problem = values.get("run.problem")
    merged = {}
    if problem:
        problem = PROBLEM_ALIASES.get(problem.strip(), problem.strip())
        values["run.problem"] = problem
        if problem not in BUILTIN_PROBLEMS:
            raise ConfigError(
                "run.problem",
                f"unknown builtin problem '{problem}', expected one of {sorted(BUILTIN_PROBLEMS)}",
            )
        merged.update(BUILTIN_PROBLEMS[problem])
    merged.update(values)
    kwargs = {KEY_MAP[k]: _convert(k, v) for k, v in merged.items()}
    return RunConfig(**kwargs).validate()


def parse_run_config(path):
    path = Path(path)
    if not path.is_file():
        raise ConfigError("config", f"file not found: {path}")
    return run_config_from_values(dotenv_values(path))


def builtin_run_config(problem):
    return run_config_from_values({"run.problem": problem})

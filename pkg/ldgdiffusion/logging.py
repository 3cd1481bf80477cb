import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from ldgdiffusion.constants import LOG_LEVEL_ENV
from ldgdiffusion.discrete.fields import DofMatrix
from ldgdiffusion.exprlang import ExprFunction
from ldgdiffusion.mesh.grid import Mesh

LOG_FORMAT = "%(asctime)s [%(name)s] %(levelname)s: %(message)s"


def configure_logging(level=None, quiet=False):
    """
    Installs one stream handler on the package logger.
    :param level: logging level name; defaults to $LDG_LOG_LEVEL or INFO
    :param quiet: only warnings and errors
    """
    if quiet:
        level = "WARNING"
    level = level or os.environ.get(LOG_LEVEL_ENV, "INFO")
    logger = logging.getLogger("ldgdiffusion")
    logger.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(str(level).upper())
    logger.propagate = False
    return logger


class RunEncoder(json.JSONEncoder):
    """Serialises run state: numpy values, sparse shapes, meshes and dataclasses."""

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()

        if isinstance(obj, np.generic):
            return obj.item()

        if isinstance(obj, Path):
            return str(obj)

        if isinstance(obj, Mesh):
            return {"_type": "mesh", "_value": obj.summary()}

        if isinstance(obj, DofMatrix):
            return {"_type": "dof_matrix", "_value": {"shape": list(obj.values.shape)}}

        if isinstance(obj, ExprFunction):
            return {"_type": "expression", "_value": obj.source}

        if sp.issparse(obj):
            return {"_type": "sparse", "_value": {"shape": list(obj.shape), "nnz": int(obj.nnz)}}

        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            if hasattr(obj, "to_dict"):
                return obj.to_dict()
            return {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}

        if callable(obj):
            return {"_type": "function", "_value": getattr(obj, "__name__", repr(obj))}

        return super().default(obj)

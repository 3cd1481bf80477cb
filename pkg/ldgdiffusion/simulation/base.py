import copy
import json
import os
import time
from abc import ABC, abstractmethod
from pathlib import Path

from ldgdiffusion.constants import RUN_LOG_FILE, RUN_STATE_FILE
from ldgdiffusion.logging import RunEncoder
from ldgdiffusion.utils import get_next_filename


class Simulation(ABC):
    """
    Base class for solver runs.

    A run takes in:
    (1) config: the RunConfig it was started from
    (2) log_dir: directory under which run_state.json and simulation.log
        are written; without log_path a fresh `run_<n>` subdirectory is used
    """

    def __init__(self, config, log_dir="output", log_path=None):
        self.run_epoch_time_ms = str(round(time.time() * 1000))
        self.config = config
        self.run_state = []

        self.log_dir = os.path.abspath(log_dir)
        self.log_path = (
            os.path.join(self.log_dir, get_next_filename("run", folder=self.log_dir))
            if log_path is None
            else os.path.abspath(log_path)
        )

    @abstractmethod
    def run(self):
        pass

    def to_dict(self):
        return {
            "class": self.__class__.__name__,
            "run_epoch_time_ms": self.run_epoch_time_ms,
            "config": self.config.to_dict(),
            "run_state": copy.deepcopy(self.run_state),
        }

    def log_state(self):
        """
        logging full run state
        """
        Path(self.log_path).mkdir(parents=True, exist_ok=True)
        with open(os.path.join(self.log_path, RUN_STATE_FILE), "w") as f:
            json.dump(self.to_dict(), f, cls=RunEncoder, indent=2)

        with open(os.path.join(self.log_path, RUN_LOG_FILE), "w") as f:
            f.write(self.human_readable_state())

    @abstractmethod
    def human_readable_state(self) -> str:
        pass

    @classmethod
    def get_all_subclasses(cls):
        subclasses_set = set()
        for subclass in cls.__subclasses__():
            subclasses_set.add(subclass)
            subclasses_set.update(subclass.get_all_subclasses())
        return list(subclasses_set)

    @classmethod
    def from_name(cls, class_name, **kwargs):
        constructor = next(
            (sub for sub in cls.get_all_subclasses() if sub.__name__ == class_name), None
        )
        if constructor is None:
            raise ValueError(f"Unknown subclass: {class_name}")
        return constructor(**kwargs)

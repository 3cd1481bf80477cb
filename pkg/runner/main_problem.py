import sys
import traceback
from pathlib import Path

from dotenv import load_dotenv

sys.path.insert(0, str(Path(__file__).parent.parent))

from ldgdiffusion.constants import MAIN_PROBLEM
from ldgdiffusion.logging import configure_logging
from ldgdiffusion.parser import builtin_run_config
from ldgdiffusion.simulation import TimeSteppingSimulation

load_dotenv(".env")


if __name__ == "__main__":
    configure_logging()
    try:
        config = builtin_run_config(MAIN_PROBLEM)
        simulation = TimeSteppingSimulation(config=config, log_dir="../example_logs_ignore/main")
        simulation.run()
        print(simulation.summary())
    except Exception as e:
        print(f"Exception Type: {type(e).__name__}")
        print(f"Exception Message: {e}")
        print(f"Stack Trace:\n{traceback.format_exc()}")

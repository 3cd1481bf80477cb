import argparse
import sys
import traceback
from pathlib import Path

from dotenv import load_dotenv

sys.path.insert(0, str(Path(__file__).parent.parent))

from ldgdiffusion.constants import CONVERGENCE_PROBLEM
from ldgdiffusion.logging import configure_logging
from ldgdiffusion.parser import builtin_run_config
from ldgdiffusion.simulation import ConvergenceStudy, plot_convergence
from ldgdiffusion.utils import parse_int_list

load_dotenv(".env")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Stationary convergence study")
    parser.add_argument("--levels", type=int, default=4)
    parser.add_argument("--orders", default="0,1,2,3")
    parser.add_argument("--log-dir", default="../example_logs_ignore/convergence")
    args = parser.parse_args()

    configure_logging()
    try:
        config = builtin_run_config(CONVERGENCE_PROBLEM)
        config.levels = list(range(args.levels + 1))
        config.orders = parse_int_list("--orders", args.orders)
        study = ConvergenceStudy(config=config.validate(), log_dir=args.log_dir)
        study.run()
        study.write_csv()
        plot_convergence(study.rows, str(Path(study.log_path) / "convergence.png"))
        print(study.to_table())
    except Exception as e:
        print(f"Exception Type: {type(e).__name__}")
        print(f"Exception Message: {e}")
        print(f"Stack Trace:\n{traceback.format_exc()}")

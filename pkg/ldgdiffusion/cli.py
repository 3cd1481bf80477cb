"""
Command line entry point:

    ldg simulate    --config run.env [--output-dir DIR] [--quiet]
    ldg convergence --config run.env [--levels J] [--orders 0,1,2] [--plot]
    ldg mesh-info   --config run.env [--vtu]

Instead of --config, --problem paper-main or --problem paper-convergence runs
a builtin problem.
"""
import argparse
import logging
import os
import sys

from dotenv import load_dotenv

from ldgdiffusion.constants import (
    CONVERGENCE_PLOT_FILE,
    CONVERGENCE_PROBLEM,
    MAIN_PROBLEM,
    MODE_STATIONARY,
)
from ldgdiffusion.exceptions import LdgError
from ldgdiffusion.logging import configure_logging
from ldgdiffusion.mesh.sources import create_mesh_source
from ldgdiffusion.parser import (
    BUILTIN_PROBLEMS,
    PROBLEM_ALIASES,
    builtin_run_config,
    parse_run_config,
)
from ldgdiffusion.simulation import (
    ConvergenceStudy,
    Simulation,
    plot_convergence,
)
from ldgdiffusion.utils import parse_int_list
from ldgdiffusion.vtkout import dump_mesh_report, write_mesh_vtu

logger = logging.getLogger(__name__)


def load_config(args, default_problem=MAIN_PROBLEM):
    if args.config:
        config = parse_run_config(args.config)
    else:
        config = builtin_run_config(args.problem or default_problem)
    if args.output_dir:
        config.output_dir = args.output_dir
    return config


def cmd_simulate(config):
    """Runs the time-dependent (or stationary) problem and writes .vtu snapshots."""
    class_name = (
        "StationarySimulation" if config.mode == MODE_STATIONARY else "TimeSteppingSimulation"
    )
    simulation = Simulation.from_name(
        class_name, config=config, log_dir=config.output_dir, log_path=config.output_dir
    )
    simulation.run()
    print(simulation.summary())
    return 0


def cmd_convergence(config, plot=False):
    study = ConvergenceStudy(config=config, log_dir=config.output_dir, log_path=config.output_dir)
    study.run()
    csv_path = study.write_csv()
    print(study.to_table(), end="")
    print(f"CSV written to {csv_path}")
    if plot:
        plot_path = plot_convergence(study.rows, os.path.join(config.output_dir, CONVERGENCE_PLOT_FILE))
        print(f"Plot written to {plot_path}")
    return 0


def cmd_mesh_info(config, write_vtu=False):
    mesh = create_mesh_source(config.mesh_source, config.h_max, config.refinements).build()
    print(dump_mesh_report(mesh), end="")
    if write_vtu:
        path = write_mesh_vtu(mesh, os.path.join(config.output_dir, "mesh"))
        print(f"Mesh written to {path}")
    return 0


def build_arg_parser():
    parser = argparse.ArgumentParser(
        prog="ldg", description="LDG solver for the 2D diffusion equation"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="run configuration file")
    common.add_argument(
        "--problem",
        choices=sorted(BUILTIN_PROBLEMS) + sorted(PROBLEM_ALIASES),
        help="builtin problem instead of --config",
    )
    common.add_argument("--output-dir", help="directory for all output files")
    common.add_argument("--quiet", action="store_true", help="only log warnings and errors")

    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("simulate", parents=[common], help="run a simulation")
    convergence = subparsers.add_parser(
        "convergence", parents=[common], help="run the stationary convergence study"
    )
    convergence.add_argument("--levels", type=int, help="finest refinement level J")
    convergence.add_argument("--orders", help="polynomial orders, e.g. 0,1,2")
    convergence.add_argument("--plot", action="store_true", help="also write convergence.png")
    mesh_info = subparsers.add_parser("mesh-info", parents=[common], help="print the mesh lists")
    mesh_info.add_argument("--vtu", action="store_true", help="also write the mesh as .vtu")
    return parser


def main(argv=None):
    load_dotenv(".env")
    args = build_arg_parser().parse_args(argv)
    configure_logging(quiet=args.quiet)
    try:
        if args.command == "simulate":
            return cmd_simulate(load_config(args))
        if args.command == "convergence":
            config = load_config(args, default_problem=CONVERGENCE_PROBLEM)
            if args.levels is not None:
                config.levels = list(range(args.levels + 1))
            if args.orders:
                config.orders = parse_int_list("--orders", args.orders)
            config.validate()
            return cmd_convergence(config, plot=args.plot)
        return cmd_mesh_info(load_config(args), write_vtu=args.vtu)
    except LdgError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``campanato <task> --config job.json``."""

import argparse
import logging
import sys

from ..errors import ConfigError
from .config import TASKS, JobConfig
from .jobs import run_job

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_INTERNAL = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="campanato",
        description="Seminorms, Carleson measures and composition operators on the disk.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Job configuration (JSON).")
    common.add_argument("--out", help="Directory for the CSV and JSON report.")
    common.add_argument("--grid-circle", type=int, help="Circle nodes N.")
    common.add_argument("--grid-radial", type=int, help="Radial panels J.")
    common.add_argument("--arc-depth", type=int, help="Finest dyadic arc level K.")
    common.add_argument("--delta-min", type=float, help="Smallest distance to the circle.")
    common.add_argument(
        "--refine",
        action="store_true",
        help="Rerun on doubled grids and append convergence columns.",
    )
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")

    subparsers = parser.add_subparsers(dest="task", required=True)
    for task in TASKS:
        sub = subparsers.add_parser(task, parents=[common], help="Run a {} job.".format(task))
        if task == "verify":
            sub.add_argument("suite", nargs="?", help="Suite or check name.")
    return parser


def load_config(args):
    """Job configuration from the parsed arguments, with grid overrides applied.

    Raises
    ------
    ConfigError
        If the configuration is missing, malformed or names another task.
    """
    if args.config is not None:
        config = JobConfig.from_json(args.config)
        if config.task != args.task:
            raise ConfigError(
                "task", "the config is a {} job, not {}.".format(config.task, args.task)
            )
        if getattr(args, "suite", None):
            config.suite = args.suite
    elif args.task == "verify":
        config = JobConfig(task="verify", suite=args.suite)
    else:
        raise ConfigError("config", "the {} task needs --config.".format(args.task))

    config.replace_grid(
        n_circle=args.grid_circle,
        n_radial=args.grid_radial,
        arc_depth=args.arc_depth,
        delta_min=args.delta_min,
    )
    if args.refine:
        config.refine = True
    if args.out is not None:
        config.out = args.out
    return config


def main(argv=None):
    """Runs one job and returns the process exit status.

    Returns
    -------
    int
        0 if every row passed, 1 on a failing row or check, 2 on a
        configuration error, 3 on an internal error.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        config = load_config(args)
        report = run_job(config)
        if config.out is not None:
            report.write(config.out)
    except ConfigError as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
    except Exception:
        logger.exception("Internal error.")
        return EXIT_INTERNAL

    if config.out is None:
        print(report.table.to_string(index=False))
    for _, row in report.errors.iterrows():
        logger.warning("Row %d (%s) failed: %s", row["row"], row["operation"], row["error"])
    if report.passed:
        logger.info("%s: all %d rows passed.", config.task, len(report))
        return EXIT_PASS
    return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

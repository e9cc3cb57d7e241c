# -*- coding: utf-8 -*-
"""
Command line front end.

    bichro fig5 --config configs/fig5.ini --out out/fig5.csv -v

Exit codes: 0 on success, 2 for invalid input or configuration, 3 when a
numerical guard (truncation, convergence, positivity) trips.
"""

import argparse
import logging
import sys

from .config import ExperimentConfig, EXPERIMENTS
from .experiments import run
from .errors import BichroError, NUMERICAL_ERRORS

_log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="bichro", description="Bichromatic trapped-ion gate experiments.")
    parser.add_argument("experiment", choices=EXPERIMENTS, help="Experiment to run.")
    parser.add_argument("--config", default=None,
                        help="Flat key = value file; missing keys take the experiment defaults.")
    parser.add_argument("--out", default=None, help="CSV path (default: <experiment>.csv).")
    parser.add_argument("--steps-per-cycle", type=int, default=None,
                        help="Integrator steps per trap period, at least 64.")
    parser.add_argument("--fock-cutoff", type=int, default=None, help="Fock cutoff n_max.")
    parser.add_argument("--workers", type=int, default=None,
                        help="Threads for the grid points (default: 1).")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug output.")
    return parser.parse_args(argv)


def configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    args = parse_args(argv)
    configure_logging(args.verbose)

    try:
        cfg = ExperimentConfig.fromConfig(args.config) if args.config else ExperimentConfig()
        cfg = cfg.withOverrides(out=args.out, steps_per_cycle=args.steps_per_cycle,
                                n_max=args.fock_cutoff, workers=args.workers)
        path, summary = run(cfg, args.experiment)
    except NUMERICAL_ERRORS as err:
        _log.error("%s: %s", type(err).__name__, err)
        print("[%s] numerical failure: %s" % (args.experiment, err), file=sys.stderr)
        return EXIT_NUMERICAL
    except (BichroError, ValueError) as err:
        _log.error("%s: %s", type(err).__name__, err)
        print("[%s] invalid input: %s" % (args.experiment, err), file=sys.stderr)
        return EXIT_INVALID

    print(summary)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

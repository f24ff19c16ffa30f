"""Command-line interface.

    fluxcz <experiment-kind> [--config cfg.yaml] [--set key=value ...] [--out path]

Exit codes: 0 success, 2 configuration error, 3 numeric failure
(non-convergence, labeling ambiguity, integrator failure), 4 optimizer
failure.
"""

import argparse
import sys

from . import __version__
from .config import load_config
from .errors import ConfigError, ConvergenceError, IntegratorError, LabelingError, OptimizerError
from .experiments import EXPERIMENT_KINDS, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_OPTIMIZER = 4

_KIND_HELP = {
    "spectrum": "single-qubit levels and charge/flux matrix elements",
    "coupled-spectrum": "transition table of the lowest dressed two-qubit states",
    "fom-sweep": "frequency mismatch, crosstalk and matrix elements vs coupling",
    "gate-vs-time": "optimized gate error vs gate time",
    "gate-vs-coupling": "optimized gate error vs coupling at fixed gate time",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxcz",
        description="Controlled-Z gate simulator for coupled fluxonium qubits",
    )
    parser.add_argument("--version", action="version", version=f"fluxcz {__version__}")
    subparsers = parser.add_subparsers(dest="kind", required=True, metavar="experiment")
    for kind in EXPERIMENT_KINDS:
        sub = subparsers.add_parser(kind, help=_KIND_HELP[kind])
        sub.add_argument("--config", default=None, help="YAML config file (defaults built in)")
        sub.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a config key, e.g. --set drive.t_g=90",
        )
        sub.add_argument("--out", default=None, help="output CSV path (overrides output.path)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.overrides)
        path = run_experiment(args.kind, config, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, LabelingError, IntegratorError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OptimizerError as exc:
        print(f"optimizer failure: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZER
    print(f"wrote {path} and {path}.meta.yaml")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

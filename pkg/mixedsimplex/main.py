"""Command-line entry point: ``mixedsimplex <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from mixedsimplex import __version__, config
from mixedsimplex.commands import REGISTRARS
from mixedsimplex.commands._io import common_parent
from mixedsimplex.errors import MixedSimplexError, NumericalFailure
from mixedsimplex.logging_config import setup_logging
from mixedsimplex.monitoring.metrics import OperationTimer, app_info, write_metrics
from mixedsimplex.schemas.config import CliConfig

logger = logging.getLogger("cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedsimplex",
        description="Mixed random variables on the simplex and mixed finite-state automata.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help=f"default {config.LOG_LEVEL}")
    parser.add_argument("--log-file", default=None, help="also log to a rotating file")
    parser.add_argument("--metrics-out", default=None, help="write Prometheus metrics here")
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    parent = common_parent()
    for register in REGISTRARS:
        register(subparsers, parent)
    return parser


def _command_name(args: argparse.Namespace) -> str:
    verb = getattr(args, "verb", None)
    return f"{args.command} {verb}" if verb else args.command


def _report(name: str, exc: MixedSimplexError) -> int:
    logger.debug("Command %s failed", name, exc_info=True)
    sys.stderr.write(f"error: {exc.name}: {exc}\n")
    return exc.exit_code


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    setup_logging(args.log_file, args.log_level)
    app_info.info({"version": __version__})

    try:
        cfg = CliConfig(
            seed=args.seed,
            tol=args.tol,
            output_format=args.output_format,
            units="bits" if args.bits else "nats",
        )
    except ValidationError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: invalid global option: {exc.errors()[0]['msg']}\n")
        return 2

    name = _command_name(args)
    logger.info("Running command=%s seed=%d units=%s", name, cfg.seed, cfg.units)
    try:
        with OperationTimer(name):
            args.handler(args, cfg)
    except MixedSimplexError as exc:
        return _report(name, exc)
    except np.linalg.LinAlgError as exc:
        return _report(name, NumericalFailure(str(exc)))
    finally:
        if args.metrics_out:
            write_metrics(args.metrics_out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
sse - Small-Set Expansion Certifier

Numerical verification of the equivalence between small-set expansion of
regular graphs and hypercontractivity of their top-eigenspace projectors.

Subcommands:
- gen       generate a family graph as an edge list
- analyze   spectrum and projector facts
- norm      certified p->q norm brackets
- profile   exact or sampled expansion profile
- round     level-set rounding of a witness vector
- verify    check one claim (easy, main, high, duality, lemmas, one-to-two)
- sweep     main-theorem battery over the built-in families

Usage:
    python sse.py verify main --family hypercube --k 4 --delta 1/16 --eps 0.1
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

# Add the src directory to path for absolute imports
sys.path.insert(0, str(Path(__file__).parent))

from logging.handlers import RotatingFileHandler

from config import EXIT_INPUT_ERROR, GRAPH_FAMILIES, config
from errors import SSEError, UsageError
from handlers import (
    Handler, RunConfig, VERIFY_CLAIMS,
    cmd_analyze, cmd_gen, cmd_norm, cmd_profile, cmd_round, cmd_sweep, cmd_verify,
)
from utils.parsing import parse_exponent, parse_number, parse_number_list, parse_pairs

# =============================================================================
# Logging
# =============================================================================

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_FILE_NAME = 'sse.log'
LOG_MAX_BYTES = 5 * 1024 * 1024  # 5MB
LOG_BACKUP_COUNT = 3

logger = logging.getLogger("sse")


def setup_logging(level: str, log_file: Optional[str] = None) -> None:
    """Console logging on stderr, plus a rotating file when asked for"""
    numeric = getattr(logging, level.upper(), None)
    if not isinstance(numeric, int):
        raise UsageError(f"unknown log level: {level}")

    logging.basicConfig(format=LOG_FORMAT, level=numeric, stream=sys.stderr)
    root = logging.getLogger()
    root.setLevel(numeric)

    if log_file is None and config.log_to_file:
        log_file = str(Path(config.log_dir) / LOG_FILE_NAME)
    if log_file is None:
        return

    path = Path(log_file).resolve()
    if any(getattr(h, "baseFilename", None) == str(path) for h in root.handlers):
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    file_handler = RotatingFileHandler(
        path,
        maxBytes=LOG_MAX_BYTES,
        backupCount=LOG_BACKUP_COUNT,
        encoding='utf-8'
    )
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(file_handler)


# =============================================================================
# Argument parsing
# =============================================================================

class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message: str) -> None:
        raise UsageError(message)


def _graph_options() -> argparse.ArgumentParser:
    parent = ArgumentParser(add_help=False)
    group = parent.add_argument_group("graph source")
    group.add_argument("--graph", metavar="PATH", help="edge-list file (PATH or file:PATH)")
    group.add_argument("--family", choices=sorted(GRAPH_FAMILIES), help="built-in family")
    group.add_argument("--n", type=int, help="vertex count")
    group.add_argument("--k", type=int, help="hypercube dimension or clique size")
    group.add_argument("--m", type=int, help="number of cliques")
    group.add_argument("--d", type=int, help="degree (random_regular)")
    group.add_argument("--graph-seed", type=int, help="random_regular seed (defaults to --seed)")
    return parent


def _run_options() -> argparse.ArgumentParser:
    parent = ArgumentParser(add_help=False)
    parent.add_argument("--out", metavar="FILE", help="write results here")
    parent.add_argument("--format", choices=("json", "csv"),
                        help="output format (default: from --out extension, else json)")
    parent.add_argument("--threads", type=int, default=None,
                        help="worker threads (0 = physical cores)")
    parent.add_argument("--seed", type=int, default=None, help="random seed")
    parent.add_argument("--no-timing", action="store_true",
                        help="leave runtime_ms null for byte-identical reports")
    parent.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    parent.add_argument("--log-file", default=None, help="also log to this rotating file")
    return parent


def _claim_options() -> argparse.ArgumentParser:
    parent = ArgumentParser(add_help=False)
    parent.add_argument("--delta", type=parse_number_list, help="densities, e.g. 1/16,1/8")
    parent.add_argument("--eps", type=parse_number_list, help="spectral gaps, e.g. 0.1")
    parent.add_argument("--lambda", dest="lam", type=parse_number_list,
                        help="eigenvalue thresholds")
    parent.add_argument("--pairs", type=parse_pairs, help="exponent pairs, e.g. 2:4,2:inf")
    parent.add_argument("--p", type=parse_exponent, help="single pair: p")
    parent.add_argument("--q", type=parse_exponent, help="single pair: q")
    parent.add_argument("--restarts", type=int, help="norm-search restarts")
    parent.add_argument("--budget", type=int, help="enumeration budget")
    parent.add_argument("--constant", type=parse_number, help="high-expansion constant C")
    parent.add_argument("--trials", type=int, help="random trials for lemma checks")
    return parent


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="sse",
        description="Certify small-set expansion / hypercontractivity claims on regular graphs",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    setup_handlers(subparsers)
    return parser


def setup_handlers(subparsers: argparse._SubParsersAction) -> None:
    """Register all subcommands and their handlers"""
    graph, run, claim = _graph_options(), _run_options(), _claim_options()

    # Graphs
    p = subparsers.add_parser("gen", parents=[graph, run], help="generate a family graph")
    p.set_defaults(handler=cmd_gen)

    p = subparsers.add_parser("analyze", parents=[graph, run, claim],
                              help="spectrum and projector facts")
    p.set_defaults(handler=cmd_analyze)

    # Norms and expansion
    p = subparsers.add_parser("norm", parents=[graph, run, claim],
                              help="p->q norm brackets of P_lambda")
    p.add_argument("--bound", type=parse_number, help="report (p,q,C)-hypercontractivity for C")
    p.set_defaults(handler=cmd_norm)

    p = subparsers.add_parser("profile", parents=[graph, run, claim],
                              help="expansion profile Phi(delta)")
    p.add_argument("--heuristic", action="store_true", help="sampled upper bound")
    p.set_defaults(handler=cmd_profile)

    p = subparsers.add_parser("round", parents=[graph, run, claim],
                              help="level-set rounding of a witness")
    p.add_argument("--witness", required=True, metavar="FILE", help="JSON array of n values")
    p.add_argument("--regime", choices=("low", "high", "pipeline"), default="pipeline")
    p.set_defaults(handler=cmd_round)

    # Claims
    p = subparsers.add_parser("verify", parents=[graph, run, claim], help="check one claim")
    p.add_argument("claim", choices=sorted([*VERIFY_CLAIMS, "duality"]))
    p.add_argument("--matrix", metavar="FILE", help="duality: JSON matrix")
    p.add_argument("--random-size", type=int, help="duality: seeded random symmetric n x n")
    p.set_defaults(handler=cmd_verify)

    p = subparsers.add_parser("sweep", parents=[run, claim], help="family battery")
    p.set_defaults(handler=cmd_sweep)


# =============================================================================
# Entry points
# =============================================================================

def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand, return the exit code"""
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.log_level or config.log_level, args.log_file)

        errors = config.validate()
        if errors:
            for error in errors:
                logger.warning(f"Config warning: {error}")

        p, q = getattr(args, "p", None), getattr(args, "q", None)
        if p is not None or q is not None:
            if p is None or q is None or args.pairs:
                raise UsageError("--p and --q go together and replace --pairs")
            args.pairs = [(p, q)]

        rc = RunConfig.from_args(args)
        logger.debug(f"Running {rc}")
        handler: Handler = args.handler
        return handler(rc)

    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else 0
    except UsageError as exc:
        print(f"sse: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (SSEError, OSError, json.JSONDecodeError) as exc:
        logger.debug("Failure details", exc_info=True)
        print(f"sse: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main():
    """Main entry point"""
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()

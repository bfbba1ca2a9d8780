"""Command-line entry point."""

import argparse
import json
import logging
from collections.abc import Sequence

from contingency_table import LatentModelError
from em_model import DEFAULT_MAX_ITER, DEFAULT_TOL
from latentem.config import Command, InputFormat, RunConfig
from latentem.persistence import json_ready
from latentem.pipeline import inspect, run
from latentem.text import AlphabetPolicy

logger = logging.getLogger(__name__)

EXIT_FAILURE = 2

_FIT_HELP = {
    Command.FIT_LATENT: "latent model P = A diag(rho) B'",
    Command.FIT_COLATENT: "co-latent model P = A C B'",
    Command.FIT_NETWORK: "soft vertex memberships of a symmetric network",
    Command.FIT_NETWORK_CO: "shared-emission co-clustering of a square table",
}


def _add_input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="path of the input table")
    parser.add_argument(
        "--format",
        choices=[f.value for f in InputFormat],
        default=InputFormat.CSV.value,
        help="dense CSV, weighted edge list or raw text (bigram counts)",
    )
    parser.add_argument(
        "--alphabet",
        choices=[p.value for p in AlphabetPolicy],
        default=AlphabetPolicy.OBSERVED.value,
        help="letters indexed by a text table",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latentem",
        description="Latent, co-latent and network EM clustering of contingency tables.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for command, help_text in _FIT_HELP.items():
        sub = commands.add_parser(command.value, help=help_text)
        _add_input_options(sub)
        sub.add_argument("--m", type=int, required=True, help="number of groups")
        sub.add_argument("--m2", type=int, default=None, help="column groups (co-latent)")
        sub.add_argument(
            "--variant", choices=["general", "symmetric", "mh"], default="general"
        )
        sub.add_argument("--lambda", dest="lam", type=float, default=1.0)
        sub.add_argument("--restarts", type=int, default=10)
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
        sub.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sub.add_argument(
            "--mh-projection",
            type=int,
            default=None,
            metavar="K",
            help="project onto marginal homogeneity every K steps",
        )
        sub.add_argument("--out", required=True, help="output directory")
    inspect_parser = commands.add_parser(Command.INSPECT.value, help="table diagnostics")
    _add_input_options(inspect_parser)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    try:
        if args.command == Command.INSPECT.value:
            info = inspect(args.input, args.format, args.alphabet)
            print(json.dumps(json_ready(info), indent=2))
            return 0
        config = RunConfig(
            command=Command(args.command),
            input_path=args.input,
            input_format=args.format,
            m=args.m,
            m2=args.m2,
            variant=args.variant,
            lam=args.lam,
            restarts=args.restarts,
            seed=args.seed,
            max_iter=args.max_iter,
            tol=args.tol,
            output_dir=args.out,
            mh_projection_interval=args.mh_projection,
            alphabet_policy=args.alphabet,
        )
        report = run(config)
    except LatentModelError as exc:
        logger.error("%s", exc)
        return EXIT_FAILURE
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_FAILURE

    print(
        f"{report.command}: best restart {report.best_restart}, "
        f"K = {report.best_kl:.6g}, outputs in {config.output_dir}"
    )
    return 0

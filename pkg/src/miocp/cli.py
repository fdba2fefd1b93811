"""``miocp`` command line: solve, simulate, evaluate and sweep problem instances."""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .facade import ExperimentFacade
from .models import BaseEvent, Command, IterationCompleted, RunManifest

logger = logging.getLogger("miocp")

PROGRESS_EVERY = 100


def _epsilon_list(text: str) -> Tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid epsilon list '{text}'") from e
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("epsilon values must be positive")
    if len(set(values)) != len(values):
        raise argparse.ArgumentTypeError(f"duplicate epsilon values in '{text}'")
    return values


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="miocp",
        description="Mutual information regularized LQ control experiments.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true",
                           help="log per-iteration progress")
    verbosity.add_argument("-q", "--quiet", action="store_true",
                           help="only log warnings and errors")
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--spec", required=True, type=Path,
                        help="problem instance JSON")
    parser.add_argument("--out", required=True, type=Path,
                        help="output directory")
    parser.add_argument("--seed", type=_nonnegative_int, default=0)
    parser.add_argument("--paths", type=_positive_int, default=1000,
                        help="number of Monte Carlo paths")
    parser.add_argument("--max-iters", type=_positive_int, default=None)
    parser.add_argument("--tol-w2", type=float, default=None,
                        help="stop when sum_k W2^2 between priors drops below this")
    parser.add_argument("--tol-obj", type=float, default=None,
                        help="stop when J decreases by less than this (0 disables)")
    parser.add_argument("--epsilon", type=_epsilon_list, default=(),
                        help="comma separated epsilon values")
    parser.add_argument("--policy", type=Path, default=None,
                        help="policy JSON for simulate/evaluate")
    parser.add_argument("--prior", type=Path, default=None,
                        help="prior JSON for evaluate")
    return parser


def manifest_from_args(args: argparse.Namespace) -> RunManifest:
    return RunManifest(
        spec_path=args.spec,
        command=Command(args.command),
        output_dir=args.out,
        seed=args.seed,
        num_paths=args.paths,
        max_iters=args.max_iters,
        tol_prior_w2=args.tol_w2,
        tol_objective=args.tol_obj,
        epsilons=tuple(args.epsilon),
        policy_path=args.policy,
        prior_path=args.prior,
    )


def _configure_logging(args: argparse.Namespace):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level,
                        format="%(asctime)s %(levelname)s %(message)s",
                        stream=sys.stderr)


def _log_progress(event: BaseEvent):
    if isinstance(event, IterationCompleted):
        if event.iteration % PROGRESS_EVERY == 0:
            logger.debug("Solver: iteration %d, J=%.12g, W2 step %.3e",
                         event.iteration, event.objective_total, event.prior_step_w2)
    else:
        logger.debug("Event: %s", type(event).__name__)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    if args.command == Command.SWEEP.value and not args.epsilon:
        parser.error("sweep needs --epsilon")
    if args.command != Command.SWEEP.value and len(args.epsilon) > 1:
        parser.error(f"{args.command} takes a single --epsilon value")

    facade = ExperimentFacade.create()
    facade.event_bus.subscribe(BaseEvent, _log_progress)

    response = facade.execute(manifest_from_args(args))
    if not response.ok:
        print(f"miocp {args.command}: {response.message}", file=sys.stderr)
        return 1
    logger.info("✓ %s", response.message)
    return 0


if __name__ == "__main__":
    sys.exit(main())

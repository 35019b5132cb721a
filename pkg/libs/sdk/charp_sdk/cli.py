"""
The `lab` command.

    lab run PLAN [--format table|jsonlines] [--out PATH] [--jobs N] [--cache DIR] [--suite paper] [-v]
    lab compare A.jsonl B.jsonl

`lab run` exits 1 when any assert-mode experiment fails or errors, 2 when the
plan cannot be read. `lab compare` exits 0 iff the two report files agree once
timings are ignored.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from charp_core.exceptions import PlanSyntaxError, PlanValidationError
from charp_core.types import ExperimentReport
from dotenv import load_dotenv

from charp_sdk.comparators import ReportComparator
from charp_sdk.emitters import emit
from charp_sdk.experiments import SUITES, ExperimentPlan, load_plan, run_plan, summarize
from charp_sdk.experiments.plan import FORMATS

logger = logging.getLogger(__name__)

CACHE_DIR_ENV = "CHARP_LAB_CACHE_DIR"
LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lab", description="Characteristic-p computer algebra laboratory.")
    commands = parser.add_subparsers(dest="cmd", required=True)

    run = commands.add_parser("run", help="Run a plan and emit its reports.")
    run.add_argument("plan", nargs="?", help="Plan file (YAML).")
    run.add_argument("--format", choices=FORMATS, help="Report format (default: the plan's, else jsonlines).")
    run.add_argument("--out", help="Report file (default: the plan's output, else standard output).")
    run.add_argument("--jobs", type=int, help="Worker pool width (default: the plan's).")
    run.add_argument("--cache", help=f"Cache directory (default: the plan's, else ${CACHE_DIR_ENV}).")
    run.add_argument("--suite", choices=sorted(SUITES), help="Also run a built-in suite after the plan.")
    run.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for detail.")

    compare = commands.add_parser("compare", help="Compare two jsonlines report files, ignoring timings.")
    compare.add_argument("first")
    compare.add_argument("second")
    compare.add_argument("--details", action="store_true", help="Print the full structural diff.")
    compare.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _configure_logging(verbosity: int) -> None:
    logging.basicConfig(
        level=LOG_LEVELS[min(verbosity, len(LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _plans(args: argparse.Namespace) -> List[ExperimentPlan]:
    plans: List[ExperimentPlan] = []
    if args.plan is not None:
        plans.append(load_plan(args.plan))
    if args.suite is not None:
        plans.extend(SUITES[args.suite]())
    return plans


def _run(args: argparse.Namespace) -> int:
    if args.plan is None and args.suite is None:
        print("lab run: give a plan file, --suite, or both", file=sys.stderr)
        return 2
    if args.jobs is not None and args.jobs < 1:
        print(f"lab run: --jobs must be positive, got {args.jobs}", file=sys.stderr)
        return 2
    try:
        plans = _plans(args)
    except (PlanSyntaxError, PlanValidationError, OSError) as e:
        print(f"lab run: {e}", file=sys.stderr)
        return 2

    env_cache = os.environ.get(CACHE_DIR_ENV) or None
    reports: List[ExperimentReport] = []
    for plan in plans:
        cache = args.cache or plan.cache or env_cache
        reports.extend(run_plan(plan, cache_dir=cache, jobs=args.jobs))

    first = plans[0] if args.plan is not None else None
    fmt = args.format or (first.format if first else "jsonlines")
    out = args.out or (first.output if first else None)
    try:
        text = emit(reports, fmt, out)
    except OSError as e:
        print(f"lab run: {e}", file=sys.stderr)
        return 2
    if out is None:
        sys.stdout.write(text)

    summary = summarize(reports)
    logger.info(f"Ran {summary['total']} experiments: {summary['verdicts']}")
    return 1 if summary["assert_failures"] else 0


def _compare(args: argparse.Namespace) -> int:
    try:
        result = ReportComparator().compare(Path(args.first), Path(args.second), verbose_diff_level=int(args.details))
    except (OSError, ValueError) as e:
        print(f"lab compare: {e}", file=sys.stderr)
        return 2
    for line in result["summary"]:
        print(line)
    if args.details and result["details"].get("diff"):
        print(json.dumps(result["details"]["diff"], indent=2, sort_keys=True))
    return 0 if result["are_equivalent"] else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = _parser().parse_args(argv)
    _configure_logging(args.verbose)
    if args.cmd == "run":
        return _run(args)
    return _compare(args)


if __name__ == "__main__":
    raise SystemExit(main())

import logging
import time
from concurrent.futures import Future, ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from charp_cache import cache_session
from charp_core.exceptions import LabError
from charp_core.types import ErrorInfo, ExperimentReport, ExperimentSpec, Verdict

from charp_sdk.experiments.plan import ExperimentPlan
from charp_sdk.experiments.registry import get_experiment
from charp_sdk.version import ENGINE_VERSION

logger = logging.getLogger(__name__)

CachePath = Optional[Union[str, Path]]


def _error_report(spec: ExperimentSpec, prime: int, error: ErrorInfo) -> ExperimentReport:
    return ExperimentReport(
        id=spec.id,
        kind=spec.kind,
        parameters=dict(spec.params),
        prime=prime,
        mode=spec.mode,
        verdict=Verdict.ERROR,
        engine_version=ENGINE_VERSION,
        error=error,
    )


def run_experiment(spec: ExperimentSpec, prime: int, cache_dir: CachePath = None) -> ExperimentReport:
    """
    Runs one experiment with its own cache session.

    Every exception is captured in the report: domain errors keep their kind,
    anything else is recorded as "unexpected".
    """
    logger.info(f"Running {spec.id} ({spec.kind}) over F_{prime}")
    start = time.perf_counter()
    counters: Optional[Dict[str, int]] = None
    try:
        with cache_session(cache_dir, ENGINE_VERSION) as session:
            outcome = get_experiment(spec.kind).run(spec, prime)
            counters = session.counters() if session is not None else None
        report = ExperimentReport.from_outcome(spec, prime, outcome, ENGINE_VERSION)
    except LabError as e:
        logger.error(f"{spec.id} failed with {e.kind}: {e}")
        report = _error_report(spec, prime, ErrorInfo(e.kind, str(e), e.details()))
    except Exception as e:
        logger.error(f"{spec.id} failed unexpectedly: {type(e).__name__}: {e}")
        report = _error_report(spec, prime, ErrorInfo("unexpected", f"{type(e).__name__}: {e}"))
    report.timings = {"seconds": round(time.perf_counter() - start, 6), "cache": counters}
    logger.info(f"{spec.id}: {report.verdict.value} in {report.timings['seconds']:.3f}s")
    return report


def _collect(future: "Future[ExperimentReport]", spec: ExperimentSpec, prime: int) -> ExperimentReport:
    """The report of a finished worker; a dead worker becomes an error report."""
    try:
        return future.result()
    except Exception as e:
        logger.error(f"Worker for {spec.id} died: {type(e).__name__}: {e}")
        report = _error_report(spec, prime, ErrorInfo("unexpected", f"worker failure: {type(e).__name__}: {e}"))
        report.timings = {"seconds": 0.0, "cache": None}
        return report


def run_plan(plan: ExperimentPlan, cache_dir: CachePath = None, jobs: Optional[int] = None) -> List[ExperimentReport]:
    """
    Executes every experiment of a plan.

    Experiments run on a process pool of width `jobs` (default: the plan's);
    reports come back in plan order whatever the completion order. A failing
    experiment never affects its siblings.

    Args:
        plan: A validated plan.
        cache_dir: Overrides the plan's cache directory.
        jobs: Overrides the plan's pool width.
    """
    cache = cache_dir if cache_dir is not None else plan.cache
    width = min(jobs or plan.jobs, len(plan.experiments))
    if width <= 1:
        return [run_experiment(spec, plan.prime, cache) for spec in plan.experiments]
    logger.info(f"Dispatching {len(plan.experiments)} experiments over F_{plan.prime} to {width} workers")
    with ProcessPoolExecutor(max_workers=width) as pool:
        futures = [pool.submit(run_experiment, spec, plan.prime, cache) for spec in plan.experiments]
        return [_collect(f, spec, plan.prime) for f, spec in zip(futures, plan.experiments)]


def run_plans(
    plans: Sequence[ExperimentPlan], cache_dir: CachePath = None, jobs: Optional[int] = None
) -> List[ExperimentReport]:
    reports: List[ExperimentReport] = []
    for plan in plans:
        reports.extend(run_plan(plan, cache_dir, jobs))
    return reports


def summarize(reports: Sequence[ExperimentReport]) -> Dict[str, Any]:
    """Verdict counts and whether any assert-mode experiment failed."""
    counts = {v.value: 0 for v in Verdict}
    for report in reports:
        counts[report.verdict.value] += 1
    return {"total": len(reports), "verdicts": counts, "assert_failures": sum(r.is_assert_failure for r in reports)}

from .kinds import (
    BKExperiment,
    CartierExperiment,
    LSupportExperiment,
    ObstructionExperiment,
    ProjectiveDegenerationExperiment,
    SplittingExperiment,
    WeylIdentitiesExperiment,
)
from .plan import ExperimentPlan, load_plan, parse_plan, plan_from_mapping
from .registry import EXPERIMENT_KINDS, get_experiment, known_kinds
from .runner import run_experiment, run_plan, run_plans, summarize
from .suite import SUITES, acceptance_suite

__all__ = [
    "EXPERIMENT_KINDS",
    "SUITES",
    "BKExperiment",
    "CartierExperiment",
    "ExperimentPlan",
    "LSupportExperiment",
    "ObstructionExperiment",
    "ProjectiveDegenerationExperiment",
    "SplittingExperiment",
    "WeylIdentitiesExperiment",
    "get_experiment",
    "known_kinds",
    "load_plan",
    "acceptance_suite",
    "parse_plan",
    "plan_from_mapping",
    "run_experiment",
    "run_plan",
    "run_plans",
    "summarize",
]

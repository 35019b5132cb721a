"""
Plan grammar.

A plan is a YAML mapping (block or flow style)::

    prime: 3
    jobs: 2
    format: jsonlines
    output: reports/run.jsonl
    cache: .charp-cache
    experiments:
      - {kind: cartier, n: 1}
      - {kind: bk, n: 1, f: "x0^2", mode: assert}
      - id: quartic
        kind: projective_degeneration
        projective: {G: "x0^4 + x1^4 + x2^4", window: 3}

Every experiment is validated by its kind while the plan is parsed.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml
from charp_core.exceptions import PlanSyntaxError, PlanValidationError, StructuralError
from charp_core.types import ExperimentSpec, Mode
from sympy import isprime

from charp_sdk.algebra.field import MAX_PRIME
from charp_sdk.experiments.registry import get_experiment

logger = logging.getLogger(__name__)

PLAN_KEYS = {"prime", "experiments", "output", "cache", "jobs", "format"}
COMMON_KEYS = {"id", "kind", "mode", "degree_cap"}
FORMATS = ("jsonlines", "table")
DEFAULT_DEGREE_CAP = 40


@dataclass
class ExperimentPlan:
    """
    A validated plan: one prime, an ordered list of experiments and run settings.

    Attributes:
        prime: The session prime shared by every experiment.
        experiments: Validated experiments, in plan order.
        output: Report file, or None for standard output.
        cache: Cache directory, or None to fall back on the environment.
        jobs: Worker pool width.
        format: Report format, "jsonlines" or "table".
    """

    prime: int
    experiments: List[ExperimentSpec] = field(default_factory=list)
    output: Optional[str] = None
    cache: Optional[str] = None
    jobs: int = 1
    format: str = "jsonlines"


def _load_yaml(text: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        line = mark.line + 1 if mark is not None else None
        column = mark.column + 1 if mark is not None else None
        raise PlanSyntaxError(str(e.problem or e), line, column) from e
    except yaml.YAMLError as e:
        raise PlanSyntaxError(str(e)) from e


def _validate_prime(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not isprime(value):
        raise PlanValidationError(f"modulus must be prime, got {value!r}")
    if value > MAX_PRIME:
        raise PlanValidationError(f"modulus {value} exceeds the supported bound {MAX_PRIME}")
    return value


def _positive_int(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise PlanValidationError(f"'{key}' must be a positive integer, got {value!r}")
    return value


def _experiment(raw: Any, index: int, prime: int) -> ExperimentSpec:
    if not isinstance(raw, dict):
        raise PlanValidationError(f"an experiment must be a mapping, got {raw!r}", index)
    kind = raw.get("kind")
    if not isinstance(kind, str):
        raise PlanValidationError("missing 'kind'", index)
    try:
        experiment = get_experiment(kind)
        mode = Mode(raw.get("mode", Mode.ASSERT.value))
        degree_cap = raw.get("degree_cap", DEFAULT_DEGREE_CAP)
        _positive_int(degree_cap, "degree_cap")
        params = experiment.validate({k: v for k, v in raw.items() if k not in COMMON_KEYS}, prime)
    except (ValueError, StructuralError, PlanValidationError) as e:
        raise PlanValidationError(f"{kind}: {e}", index) from e
    return ExperimentSpec(
        id=str(raw.get("id", f"{kind}-{index}")),
        kind=kind,
        params=params,
        mode=mode,
        degree_cap=degree_cap,
    )


def parse_plan(text: str) -> ExperimentPlan:
    """
    Parses and validates plan text.

    Raises:
        PlanSyntaxError: If the text is not YAML; carries line and column.
        PlanValidationError: If the plan is well-formed but invalid; carries
            the experiment index when one experiment is at fault.
    """
    return plan_from_mapping(_load_yaml(text))


def plan_from_mapping(data: Any) -> ExperimentPlan:
    """Validates an already-loaded plan mapping."""
    if not isinstance(data, dict):
        raise PlanSyntaxError(f"a plan must be a mapping, got {type(data).__name__}")
    unknown = sorted(set(data) - PLAN_KEYS)
    if unknown:
        raise PlanValidationError(f"unknown plan keys {unknown}; expected a subset of {sorted(PLAN_KEYS)}")
    if "prime" not in data:
        raise PlanValidationError("missing 'prime'")
    prime = _validate_prime(data["prime"])

    raw_experiments = data.get("experiments") or []
    if not isinstance(raw_experiments, list):
        raise PlanValidationError("'experiments' must be a list")
    experiments = [_experiment(raw, index, prime) for index, raw in enumerate(raw_experiments)]
    seen: Dict[str, int] = {}
    for index, spec in enumerate(experiments):
        if spec.id in seen:
            raise PlanValidationError(f"duplicate id {spec.id!r} (first used by experiment #{seen[spec.id]})", index)
        seen[spec.id] = index

    fmt = data.get("format", "jsonlines")
    if fmt not in FORMATS:
        raise PlanValidationError(f"'format' must be one of {', '.join(FORMATS)}, got {fmt!r}")
    output, cache = data.get("output"), data.get("cache")
    plan = ExperimentPlan(
        prime=prime,
        experiments=experiments,
        output=str(output) if output is not None else None,
        cache=str(cache) if cache is not None else None,
        jobs=_positive_int(data.get("jobs", 1), "jobs"),
        format=fmt,
    )
    logger.debug(f"Parsed plan over F_{prime} with {len(experiments)} experiments")
    return plan


def load_plan(path: Union[str, Path]) -> ExperimentPlan:
    """
    Reads and parses a UTF-8 plan file.

    Raises:
        OSError: If the file cannot be read; the message names the path.
        PlanSyntaxError: If the file is not valid UTF-8.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise PlanSyntaxError(f"plan {path} is not valid UTF-8: {e.reason} at byte {e.start}") from e
    except OSError as e:
        raise OSError(f"Could not read plan {path}: {e}") from e
    return parse_plan(text)

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, TypeAlias, Union

# Basic Types
FilePath = Union[Path, str]
Exponents: TypeAlias = Tuple[int, ...]
Record: TypeAlias = Dict[str, Any]


class Mode(str, Enum):
    """How an experiment's checks are interpreted."""

    ASSERT = "assert"
    EXPLORATORY = "exploratory"


class Verdict(str, Enum):
    """Outcome of one experiment."""

    PASS = "pass"
    FAIL = "fail"
    EXPLORATORY = "exploratory"
    ERROR = "error"


class ComparisonVerdict(str, Enum):
    """Degreewise comparison of two dimension profiles."""

    EQUAL = "equal"
    FIRST_DOMINATES = "first_dominates"
    SECOND_DOMINATES = "second_dominates"
    MIXED = "mixed"


@dataclass(frozen=True)
class Finite:
    """An exact, finite k-dimension."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"Dimension must be non-negative, got {self.value}")

    def to_record(self) -> Record:
        return {"finite": True, "value": self.value}


@dataclass(frozen=True)
class InfiniteOrAbove:
    """
    A k-dimension that is infinite.

    Attributes:
        cap: The degree cap used while enumerating standard monomials.
        lower_bound: Number of standard monomials of degree <= cap, a lower
            bound on any truncation of the space.
    """

    cap: int
    lower_bound: int = 0

    def to_record(self) -> Record:
        return {"finite": False, "cap": self.cap, "lower_bound": self.lower_bound}


Dimension: TypeAlias = Union[Finite, InfiniteOrAbove]


def dimension_from_record(record: Record) -> Dimension:
    if record.get("finite"):
        return Finite(int(record["value"]))
    return InfiniteOrAbove(int(record["cap"]), int(record.get("lower_bound", 0)))


@dataclass
class ExperimentSpec:
    """
    One validated experiment of a plan.

    Attributes:
        id: Unique identifier inside the plan.
        kind: Registered experiment kind (e.g. "cartier", "bk").
        params: Kind-specific parameters, already normalized by the experiment's validator.
        mode: Whether checks yield pass/fail verdicts or are only recorded.
        degree_cap: Enumeration cap handed to every dimension count.
    """

    id: str
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    mode: Mode = Mode.ASSERT
    degree_cap: int = 40


@dataclass
class ExperimentOutcome:
    """
    What an experiment computes, before it is stamped into a report.

    Attributes:
        checks: Named boolean checks. An assert-mode experiment passes iff all are True.
        tables: Dimension tables and other computed values, JSON-compatible.
        witnesses: Matrices, generators and certificates backing the checks.
        notes: Free-form remarks (flags such as failed hypotheses).
    """

    checks: Dict[str, bool] = field(default_factory=dict)
    tables: Dict[str, Any] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(self.checks.values())


@dataclass
class ErrorInfo:
    """Machine-readable description of an experiment failure."""

    kind: str
    message: str
    details: Dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> Record:
        return {"kind": self.kind, "message": self.message, "details": self.details}


@dataclass
class ExperimentReport:
    """
    Self-contained record of one executed experiment.

    Everything that may legitimately differ between two replays of the same
    plan (wall-clock seconds, cache hits and misses) lives under `timings`.
    """

    id: str
    kind: str
    parameters: Dict[str, Any]
    prime: int
    mode: Mode
    verdict: Verdict
    engine_version: str
    checks: Dict[str, bool] = field(default_factory=dict)
    tables: Dict[str, Any] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    timings: Dict[str, Any] = field(default_factory=dict)
    error: Optional[ErrorInfo] = None

    @classmethod
    def from_outcome(
        cls,
        spec: ExperimentSpec,
        prime: int,
        outcome: ExperimentOutcome,
        engine_version: str,
        timings: Optional[Dict[str, Any]] = None,
    ) -> "ExperimentReport":
        """Stamps an outcome: assert mode passes iff every check holds."""
        if spec.mode is Mode.EXPLORATORY:
            verdict = Verdict.EXPLORATORY
        else:
            verdict = Verdict.PASS if outcome.all_passed else Verdict.FAIL
        return cls(
            id=spec.id,
            kind=spec.kind,
            parameters=dict(spec.params),
            prime=prime,
            mode=spec.mode,
            verdict=verdict,
            engine_version=engine_version,
            checks=dict(outcome.checks),
            tables=dict(outcome.tables),
            witnesses=dict(outcome.witnesses),
            notes=list(outcome.notes),
            timings=dict(timings or {}),
        )

    @property
    def is_assert_failure(self) -> bool:
        return self.mode is Mode.ASSERT and self.verdict in (Verdict.FAIL, Verdict.ERROR)

    def to_record(self) -> Record:
        return {
            "id": self.id,
            "kind": self.kind,
            "parameters": self.parameters,
            "prime": self.prime,
            "mode": self.mode.value,
            "verdict": self.verdict.value,
            "engine_version": self.engine_version,
            "checks": self.checks,
            "tables": self.tables,
            "witnesses": self.witnesses,
            "notes": self.notes,
            "timings": self.timings,
            "error": self.error.to_record() if self.error else None,
        }

    @classmethod
    def from_record(cls, record: Record) -> "ExperimentReport":
        error = record.get("error")
        return cls(
            id=record["id"],
            kind=record["kind"],
            parameters=record.get("parameters", {}),
            prime=int(record["prime"]),
            mode=Mode(record["mode"]),
            verdict=Verdict(record["verdict"]),
            engine_version=record["engine_version"],
            checks=record.get("checks", {}),
            tables=record.get("tables", {}),
            witnesses=record.get("witnesses", {}),
            notes=list(record.get("notes", [])),
            timings=record.get("timings", {}),
            error=ErrorInfo(**error) if error else None,
        )

import abc
from typing import Any, ClassVar, Dict

from charp_core.types import ExperimentOutcome, ExperimentSpec


class Experiment(abc.ABC):
    """
    Abstract base class for experiment kinds.

    An experiment kind knows how to validate the parameters a plan gives it
    and how to run one parameter set for a fixed prime. Validation happens
    while the plan is parsed, so `run` may assume normalized parameters.
    """

    kind: ClassVar[str]

    @abc.abstractmethod
    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        """
        Checks and normalizes the raw parameters of one experiment.

        Args:
            params: Kind-specific keys as they appear in the plan (without
                `id`, `kind`, `mode` and `degree_cap`).
            prime: The plan's session prime.

        Returns:
            The normalized parameters (defaults filled in, polynomial text
            canonicalized). This dictionary is what reports record.

        Raises:
            ValueError: If a parameter violates the kind's preconditions. The
                plan parser turns this into a position-annotated
                `PlanValidationError`.
        """
        pass

    @abc.abstractmethod
    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        """
        Executes one experiment.

        Args:
            spec: The validated experiment.
            prime: The session prime.

        Returns:
            The computed checks, tables and witnesses. Verdicts are assigned by
            the caller from `spec.mode` and the checks.

        Raises:
            LabError: Any domain failure; the caller records it in the report.
        """
        pass

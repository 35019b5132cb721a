from typing import Any, Dict

import pytest

from charp_core.experiments.base import Experiment
from charp_core.types import ExperimentOutcome, ExperimentSpec


class ParityExperiment(Experiment):
    """Checks that `value` is even modulo the session prime."""

    kind = "parity"

    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        if not isinstance(params.get("value"), int):
            raise ValueError("'value' must be an integer")
        return {"value": params["value"] % prime}

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        value = spec.params["value"]
        return ExperimentOutcome(checks={"even": value % 2 == 0}, tables={"value": value})


@pytest.fixture
def parity():
    return ParityExperiment()


def test_validate_normalizes(parity):
    assert parity.validate({"value": 9}, 7) == {"value": 2}


def test_validate_rejects(parity):
    with pytest.raises(ValueError, match="integer"):
        parity.validate({"value": "nine"}, 7)


def test_run_produces_outcome(parity):
    spec = ExperimentSpec(id="p", kind="parity", params=parity.validate({"value": 4}, 5))
    outcome = parity.run(spec, 5)
    assert outcome.all_passed
    assert outcome.tables == {"value": 4}


def test_experiment_abstractness():
    with pytest.raises(TypeError):
        Experiment()

    class Incomplete(Experiment):
        kind = "incomplete"

        def validate(self, params, prime):
            return params

    with pytest.raises(TypeError):
        Incomplete()

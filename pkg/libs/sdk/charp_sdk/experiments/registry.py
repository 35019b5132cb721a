from typing import Dict, List, Type

from charp_core.experiments import Experiment

from charp_sdk.experiments.kinds import (
    BKExperiment,
    CartierExperiment,
    LSupportExperiment,
    ObstructionExperiment,
    ProjectiveDegenerationExperiment,
    SplittingExperiment,
    WeylIdentitiesExperiment,
)

EXPERIMENT_KINDS: Dict[str, Type[Experiment]] = {
    cls.kind: cls
    for cls in (
        CartierExperiment,
        ObstructionExperiment,
        WeylIdentitiesExperiment,
        BKExperiment,
        LSupportExperiment,
        ProjectiveDegenerationExperiment,
        SplittingExperiment,
    )
}


def known_kinds() -> List[str]:
    return sorted(EXPERIMENT_KINDS)


def get_experiment(kind: str) -> Experiment:
    """
    Instantiates the experiment registered under `kind`.

    Raises:
        ValueError: If no experiment has that kind.
    """
    try:
        return EXPERIMENT_KINDS[kind]()
    except KeyError:
        raise ValueError(f"unknown experiment kind {kind!r}; known kinds: {', '.join(known_kinds())}") from None

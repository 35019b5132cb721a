"""Core abstractions for the characteristic-p laboratory."""

from .comparators.base import Comparator
from .emitters.base import Emitter
from .experiments.base import Experiment

__all__ = [
    "Comparator",
    "Emitter",
    "Experiment",
]

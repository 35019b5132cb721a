from .base import Experiment

__all__ = ["Experiment"]

from .base import Comparator

__all__ = ["Comparator"]

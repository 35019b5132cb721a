from .base import Emitter

__all__ = ["Emitter"]

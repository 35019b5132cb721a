"""Characteristic-p computer algebra laboratory."""

from charp_sdk.version import ENGINE_VERSION

__all__ = ["ENGINE_VERSION"]

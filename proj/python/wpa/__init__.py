"""Weighted polynomial approximation toolkit (Python bindings)."""

from ._wpa import *  # noqa: F401,F403
from ._wpa import WpaError

__all__ = [name for name in dir() if not name.startswith("_")] + ["WpaError"]

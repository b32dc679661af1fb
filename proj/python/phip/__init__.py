"""Spectral and isoperimetric analysis of finite Markov chains."""

from ._core import *  # noqa: F401,F403
from ._core import PhipError, __version__

__all__ = [name for name in dir() if not name.startswith("_")]

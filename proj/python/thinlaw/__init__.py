"""Rényi thinning of integer-valued distributions: laws of thin numbers,
Poisson–Charlier expansions, and scaled Fisher information."""

from ._thinlaw import *  # noqa: F401,F403
from ._thinlaw import HypothesisError, ParameterError, Pmf, ResourceError

__all__ = [name for name in dir() if not name.startswith("_")]

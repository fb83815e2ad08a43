"""Permutation pairs, zero-power supports, coefficient conditions and the
eigenvalue region of trace-zero doubly stochastic 5x5 matrices."""

from .perm import Permutation

__version__ = "0.1.0"
__all__ = ["Permutation", "__version__"]

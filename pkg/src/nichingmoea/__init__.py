"""Niching diversity estimation for multi-modal multi-objective optimization."""

from .algorithms import AlgorithmConfig, run_algorithm
from .problems import get_problem

__version__ = "0.1.0"

__all__ = ["AlgorithmConfig", "run_algorithm", "get_problem", "__version__"]

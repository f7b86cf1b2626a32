"""Exact lattice, fan and polynomial tools for toroidal desingularization."""

__version__ = "0.1.0"

from .exactmath import DomainError

__all__ = ["DomainError", "__version__"]

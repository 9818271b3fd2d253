"""Deterministic generating sets for Picard groups of hyperelliptic curves."""

from .kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]

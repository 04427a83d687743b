"""Exact enumeration of line configurations on del Pezzo surfaces and the Gosset polytopes."""

from .errors import DomainError, InvariantError
from .picard import DivisorClass, SurfaceModel, anticanonical_degree, canonical, pairing, reflect, surface

__all__ = [
    "DivisorClass",
    "DomainError",
    "InvariantError",
    "SurfaceModel",
    "anticanonical_degree",
    "canonical",
    "pairing",
    "reflect",
    "surface",
]

__version__ = "0.1.0"

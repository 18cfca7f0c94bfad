"""Outer independent Roman domination on cylinder graphs P_n x C_m."""

from .core import CylinderSpec, Labeling, ValidationReport, neighbors, validate, weight

__all__ = ["CylinderSpec", "Labeling", "ValidationReport", "neighbors", "validate", "weight"]
__version__ = "0.1.0"

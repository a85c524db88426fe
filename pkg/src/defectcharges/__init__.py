"""Conserved-charge hierarchies for integrable field theories with defects."""

__version__ = "0.1.0"

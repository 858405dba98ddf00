"""Exact column generation with Gomory mixed-integer cut columns."""

__version__ = "0.1.0"

"""Exact bounds and certificates for list-coloring style graph invariants."""

__version__ = "0.1.0"

"""Exact engine for the Klein and Wiman line configurations."""

__version__ = "0.1.0"

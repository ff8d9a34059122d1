"""Exact computations with modules over elementary abelian p-groups."""

__version__ = "0.1.0"

"""Exact solver, verifier and audit toolkit for uniquely restricted matchings."""

__version__ = "0.1.0"

"""Exact computation of the conjectural leading constants in Malle's conjecture."""

__version__ = "0.1.0"

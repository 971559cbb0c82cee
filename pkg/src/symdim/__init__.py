"""Combinatorics and dimension lower bounds for modular irreducible representations of symmetric groups."""

__version__ = "0.1.0"

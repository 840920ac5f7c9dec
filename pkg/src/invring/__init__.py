"""Exact computations in invariant rings of permutation groups acting on graphs."""

__version__ = "0.1.0"

"""Ordinal-indexed Schreier families, the word reduction calculus, and
brute-force finite-instance verifiers for the associated partition
results."""

__version__ = "0.1.0"

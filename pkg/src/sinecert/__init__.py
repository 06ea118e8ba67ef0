"""Exact and numeric certification of nonnegative sine polynomials on [0, pi]."""

__version__ = "0.1.0"

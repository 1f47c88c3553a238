"""Exact computation of the piecewise-linear concordance invariant Phi."""

__version__ = "0.1.0"

"""Exact computations on the Farey-graph curve complex and related surface invariants."""

__version__ = "0.1.0"

"""Exact combinatorial toolkit for permutation codes under the Kendall and
cyclic Kendall metrics."""

__version__ = "0.1.0"

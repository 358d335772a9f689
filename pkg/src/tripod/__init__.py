"""Exact abc-sum heights, radicals, conjecture checks and Belyi maps."""

__version__ = "0.1.0"

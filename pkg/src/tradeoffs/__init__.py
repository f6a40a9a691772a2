"""Ratio-parameterized approximation schemes, exact oracles and reduction gadgets."""

__version__ = "0.1.0"

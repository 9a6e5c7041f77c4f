"""Exact Rado numbers for c1*x1 + ... + c_{k-1}*x_{k-1} = x_k + b."""

__version__ = "0.1.0"

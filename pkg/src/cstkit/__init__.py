"""Exact decision procedures for polynomial invariant rings of finite
linearly reductive group scheme actions, with brute-force cross-checks."""

__version__ = "0.1.0"

"""Exact construction and verification of weight-graded Lie algebras over sl(n+1)."""

__version__ = "0.1.0"

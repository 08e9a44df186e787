"""Finite-scale checks for n-cofinality and n-siftedness of functors between finite categories."""

__version__ = "0.1.0"

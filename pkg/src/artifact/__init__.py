"""Exact verification workbench for log-concavity inequalities on greedoids, matroids and posets."""

__version__ = "0.1.0"

"""Computational certificates that powers of graded ideals give Golod rings."""

__version__ = "0.1.0"

"""Mutual information optimal control for discrete-time linear-Gaussian systems."""

__version__ = "0.0.1"

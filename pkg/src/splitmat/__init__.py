"""Gaussian split-Hermitian random matrix ensembles."""

__version__ = "0.1.0"

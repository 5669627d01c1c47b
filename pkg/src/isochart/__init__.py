"""Exact chart computations for the rho-deformation between the Adams E2
page and classical stable stems."""

__version__ = "0.1.0"

"""Exact kernels, quadrature layers and nonexistence certificates for minimal cubature."""

__version__ = "0.1.0"

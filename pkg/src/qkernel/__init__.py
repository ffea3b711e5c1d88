"""Numerical kernels for q-series: products, theta functions, basic
hypergeometric series, contour quadrature, orthogonal polynomials and a
registry of machine-checked identities."""

__version__ = "0.1.0"

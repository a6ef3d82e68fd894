"""Exact twisted Cartan, BRST and Weil models for equivariant cohomology."""

from .scalars import I, ONE, ZERO, Scalar, parse_scalar

__version__ = "0.1.0"

__all__ = ["I", "ONE", "ZERO", "Scalar", "parse_scalar", "__version__"]

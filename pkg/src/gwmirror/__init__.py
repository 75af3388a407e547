"""Exact-arithmetic mirror-formula engine for genus-zero GW invariants."""

from .scalars import Q, qparse, qstr

__all__ = ["Q", "qstr", "qparse"]
__version__ = "0.1.0"

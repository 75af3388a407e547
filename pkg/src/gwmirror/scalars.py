"""Exact rational scalars and their canonical text encoding.

Every number in this package is an arbitrary-precision rational; there is
no floating point anywhere.  ``Q`` is the scalar constructor: gmpy2's mpq
when available (same semantics, much faster), stdlib Fraction otherwise.
"""
from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is an optional accelerator
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def qstr(x) -> str:
    """Canonical "num/den" encoding; bit-exact round trip via qparse."""
    return f"{x.numerator}/{x.denominator}"


def qparse(s: str):
    num, _, den = s.partition("/")
    return Q(int(num), int(den)) if den else Q(int(num))


def prod(factors, start=ONE):
    r = start
    for f in factors:
        r = r * f
    return r

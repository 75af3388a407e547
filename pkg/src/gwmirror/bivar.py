"""Bivariate rational functions with a separable denominator.

Every object handled here has the form num(h1, h2) / (d1(h1) * d2(h2)):
products of univariate rational functions in the two propagator slots,
and sums of such.  That covers every fixed-locus contribution and every
pairwise product of one-propagator series, so no bivariate gcd is needed;
equality is decided by cross-multiplication.
"""
from __future__ import annotations

from .poly import Poly, RatFn, poly_gcd
from .scalars import ONE, Q, ZERO


def _num_mul(a: dict, b: dict) -> dict:
    out: dict[tuple[int, int], object] = {}
    for (i1, j1), x in a.items():
        for (i2, j2), y in b.items():
            k = (i1 + i2, j1 + j2)
            v = out.get(k, ZERO) + x * y
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
    return out


def _num_mul_uni(a: dict, p: Poly, slot: int) -> dict:
    out: dict[tuple[int, int], object] = {}
    for (i, j), x in a.items():
        for k, c in enumerate(p.c):
            if c == 0:
                continue
            key = (i + k, j) if slot == 1 else (i, j + k)
            v = out.get(key, ZERO) + x * c
            if v == 0:
                out.pop(key, None)
            else:
                out[key] = v
    return out


class BivRat:
    """num / (d1(h1) * d2(h2)) with num a bivariate polynomial dict."""

    __slots__ = ("num", "d1", "d2")

    def __init__(self, num=None, d1: Poly | None = None, d2: Poly | None = None):
        self.num: dict[tuple[int, int], object] = {
            k: v for k, v in (num or {}).items() if v != 0
        }
        self.d1 = d1 if d1 is not None else Poly([ONE])
        self.d2 = d2 if d2 is not None else Poly([ONE])
        if self.d1.is_zero() or self.d2.is_zero():
            raise ZeroDivisionError("bivariate rational with zero denominator")

    # -- constructors ----------------------------------------------------
    @staticmethod
    def const(x) -> "BivRat":
        return BivRat({(0, 0): x})

    @staticmethod
    def zero() -> "BivRat":
        return BivRat({})

    @staticmethod
    def from_ratfn(f: RatFn, slot: int) -> "BivRat":
        num = {
            ((k, 0) if slot == 1 else (0, k)): c
            for k, c in enumerate(f.num.c)
            if c != 0
        }
        return BivRat(num, f.den, None) if slot == 1 else BivRat(num, None, f.den)

    @staticmethod
    def product(f: RatFn, g: RatFn) -> "BivRat":
        """f(h1) * g(h2)."""
        return BivRat.from_ratfn(f, 1) * BivRat.from_ratfn(g, 2)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivRat):
            return NotImplemented
        left = _num_mul_uni(_num_mul_uni(self.num, other.d1, 1), other.d2, 2)
        right = _num_mul_uni(_num_mul_uni(other.num, self.d1, 1), self.d2, 2)
        return left == right

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "BivRat") -> "BivRat":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g1 = poly_gcd(self.d1, other.d1)
        g2 = poly_gcd(self.d2, other.d2)
        l1 = self.d1 * (other.d1 // g1)
        l2 = self.d2 * (other.d2 // g2)
        a = _num_mul_uni(_num_mul_uni(self.num, other.d1 // g1, 1), other.d2 // g2, 2)
        b = _num_mul_uni(_num_mul_uni(other.num, self.d1 // g1, 1), self.d2 // g2, 2)
        for k, v in b.items():
            s = a.get(k, ZERO) + v
            if s == 0:
                a.pop(k, None)
            else:
                a[k] = s
        return BivRat(a, l1, l2)

    def __sub__(self, other: "BivRat") -> "BivRat":
        return self + other.scale(-ONE)

    def __mul__(self, other: "BivRat") -> "BivRat":
        if self.is_zero() or other.is_zero():
            return BivRat.zero()
        return BivRat(
            _num_mul(self.num, other.num), self.d1 * other.d1, self.d2 * other.d2
        )

    def scale(self, s) -> "BivRat":
        if s == 0:
            return BivRat.zero()
        return BivRat({k: v * s for k, v in self.num.items()}, self.d1, self.d2)

    def mul_ratfn(self, f: RatFn, slot: int) -> "BivRat":
        num = _num_mul_uni(self.num, f.num, slot)
        if slot == 1:
            return BivRat(num, self.d1 * f.den, self.d2)
        return BivRat(num, self.d1, self.d2 * f.den)

    def swapped(self) -> "BivRat":
        return BivRat({(j, i): v for (i, j), v in self.num.items()}, self.d2, self.d1)

    def to_ratfn(self, slot: int) -> RatFn:
        """Collapse to a univariate rational function; the other slot must be absent."""
        other = 2 if slot == 1 else 1
        dother = self.d2 if slot == 1 else self.d1
        if dother.degree > 0:
            raise ValueError("bivariate function still depends on the other slot")
        coeffs: dict[int, object] = {}
        for (i, j), v in self.num.items():
            e = (i, j) if slot == 1 else (j, i)
            if e[1] != 0:
                raise ValueError("bivariate function still depends on the other slot")
            coeffs[e[0]] = v
        num = Poly([coeffs.get(k, ZERO) for k in range(max(coeffs, default=0) + 1)])
        den = (self.d1 if slot == 1 else self.d2) * dother[0]
        return RatFn(num, den)

    def __repr__(self) -> str:
        return f"BivRat({self.num!r} / ({self.d1!r})*({self.d2!r}))"

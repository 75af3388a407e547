"""Finite Laurent windows in h, and their bivariate (h1, h2) analogue.

A window is a finite block of h-exponents with rational entries.  It is a
capacity, not a support claim: end entries may be zero, and arithmetic
trims zeros.  Callers enforce per-computation exponent caps; exceeding a
cap is an error, never a silent truncation.
"""
from __future__ import annotations

from .scalars import ONE, Q, ZERO


class WindowCapError(ValueError):
    pass


class LaurentWindow:
    __slots__ = ("lo", "c")

    def __init__(self, lo: int = 0, coeffs=()):
        c = list(coeffs)
        # trim both ends so (lo, c) is canonical; zero is lo=0, c=[]
        n0 = 0
        while n0 < len(c) and c[n0] == 0:
            n0 += 1
        n1 = len(c)
        while n1 > n0 and c[n1 - 1] == 0:
            n1 -= 1
        self.c = c[n0:n1]
        self.lo = lo + n0 if self.c else 0

    @staticmethod
    def monomial(coeff, expo: int) -> "LaurentWindow":
        return LaurentWindow(expo, [coeff])

    @staticmethod
    def zero() -> "LaurentWindow":
        return LaurentWindow()

    @property
    def hi(self) -> int:
        return self.lo + len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def get(self, expo: int):
        k = expo - self.lo
        return self.c[k] if 0 <= k < len(self.c) else ZERO

    def items(self):
        for k, a in enumerate(self.c):
            if a != 0:
                yield self.lo + k, a

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentWindow):
            return self.lo == other.lo and self.c == other.c
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __neg__(self) -> "LaurentWindow":
        return LaurentWindow(self.lo, [-a for a in self.c])

    def __add__(self, other: "LaurentWindow") -> "LaurentWindow":
        if not isinstance(other, LaurentWindow):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return LaurentWindow(
            lo, [self.get(e) + other.get(e) for e in range(lo, hi + 1)]
        )

    def __sub__(self, other: "LaurentWindow") -> "LaurentWindow":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentWindow):
            if self.is_zero() or other.is_zero():
                return LaurentWindow()
            out = [ZERO] * (len(self.c) + len(other.c) - 1)
            for i, a in enumerate(self.c):
                if a == 0:
                    continue
                for j, b in enumerate(other.c):
                    if b != 0:
                        out[i + j] += a * b
            return LaurentWindow(self.lo + other.lo, out)
        # scalar
        return LaurentWindow(self.lo, [a * other for a in self.c])

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentWindow":
        """Multiply by h^k."""
        if self.is_zero():
            return self
        return LaurentWindow(self.lo + k, self.c)

    def check_cap(self, cap_lo: int, cap_hi: int, context: str = "") -> None:
        if self.is_zero():
            return
        if self.lo < cap_lo or self.hi > cap_hi:
            raise WindowCapError(
                f"h-window [{self.lo},{self.hi}] outside cap [{cap_lo},{cap_hi}]"
                + (f" ({context})" if context else "")
            )

    def nonneg_part(self) -> "LaurentWindow":
        """Terms with exponent >= 0 (the 'modulo 1/h' part)."""
        if self.is_zero() or self.lo >= 0:
            return self
        return LaurentWindow(0, self.c[-self.lo :])

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{a}*h^{e}" for e, a in self.items())


class BivWindow:
    """Bivariate Laurent block in (h1, h2), stored sparsely."""

    __slots__ = ("d",)

    def __init__(self, entries=None):
        self.d: dict[tuple[int, int], object] = {}
        if entries:
            for k, v in (entries.items() if isinstance(entries, dict) else entries):
                if v != 0:
                    self.d[k] = self.d.get(k, ZERO) + v
            self.d = {k: v for k, v in self.d.items() if v != 0}

    @staticmethod
    def outer(a: LaurentWindow, b: LaurentWindow) -> "BivWindow":
        out = BivWindow()
        for e1, x in a.items():
            for e2, y in b.items():
                out.d[(e1, e2)] = out.d.get((e1, e2), ZERO) + x * y
        out.d = {k: v for k, v in out.d.items() if v != 0}
        return out

    def is_zero(self) -> bool:
        return not self.d

    def get(self, e1: int, e2: int):
        return self.d.get((e1, e2), ZERO)

    def __eq__(self, other) -> bool:
        if isinstance(other, BivWindow):
            return self.d == other.d
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __add__(self, other: "BivWindow") -> "BivWindow":
        out = BivWindow()
        out.d = dict(self.d)
        for k, v in other.d.items():
            s = out.d.get(k, ZERO) + v
            if s == 0:
                out.d.pop(k, None)
            else:
                out.d[k] = s
        return out

    def scale(self, s) -> "BivWindow":
        out = BivWindow()
        if s != 0:
            out.d = {k: v * s for k, v in self.d.items()}
        return out

    def swapped(self) -> "BivWindow":
        out = BivWindow()
        out.d = {(e2, e1): v for (e1, e2), v in self.d.items()}
        return out

    def divide_h1_plus_h2(self) -> "BivWindow":
        """Exact division by (h1 + h2); raises if not divisible.

        Treats the block as a polynomial in h2 with Laurent-in-h1
        coefficients and runs synthetic division from the top power down.
        """
        if self.is_zero():
            return BivWindow()
        lo2 = min(e2 for _, e2 in self.d)
        hi2 = max(e2 for _, e2 in self.d)
        n2 = hi2 - lo2 + 1
        # rows[j] = coefficient (Laurent in h1) of h2^(lo2 + j)
        rows: list[dict[int, object]] = [dict() for _ in range(n2)]
        for (e1, e2), v in self.d.items():
            rows[e2 - lo2][e1] = v
        quot: list[dict[int, object]] = [dict() for _ in range(max(n2 - 1, 0))]
        for j in range(n2 - 1, 0, -1):
            q = rows[j]
            quot[j - 1] = q
            # remainder -= q * (h2 + h1) * h2^(j-1): kills the h2^j term
            tgt = rows[j - 1]
            for e1, v in q.items():
                if v != 0:
                    tgt[e1 + 1] = tgt.get(e1 + 1, ZERO) - v
        if any(v != 0 for v in rows[0].values()):
            raise ValueError("bivariate block is not divisible by h1 + h2")
        out = BivWindow()
        for j, row in enumerate(quot):
            for e1, v in row.items():
                if v != 0:
                    out.d[(e1, lo2 + j)] = v
        return out

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(
            f"{v}*h1^{e1}*h2^{e2}" for (e1, e2), v in sorted(self.d.items())
        )

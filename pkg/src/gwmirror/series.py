"""Truncated power series over an exact coefficient ring.

A TruncatedSeries holds coefficients 0..order of a single formal variable;
terms beyond the order are discarded.  Arithmetic between two series returns
the minimum of the two orders, and mixing variable tags is an error, so
truncation mistakes fail loudly instead of silently losing terms.

Coefficients may be rationals, polynomials, rational functions or any type
supporting ring operators; division happens only by the constant term
(recip/log) or by integers (exp), which every coefficient type here supports.
"""
from __future__ import annotations

from .scalars import ONE, Q, ZERO


class SeriesError(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs):
        self.var = var
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise SeriesError("a truncated series needs at least its constant term")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def constant(var: str, value, order: int) -> "TruncatedSeries":
        zero = value * 0
        return TruncatedSeries(var, [value] + [zero] * order)

    @staticmethod
    def zeros(var: str, order: int, zero=ZERO) -> "TruncatedSeries":
        return TruncatedSeries(var, [zero] * (order + 1))

    @staticmethod
    def gen(var: str, order: int) -> "TruncatedSeries":
        """The series for the variable itself."""
        if order < 1:
            raise SeriesError("order < 1 cannot represent the variable")
        c = [ZERO] * (order + 1)
        c[1] = ONE
        return TruncatedSeries(var, c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int):
        return self.coeffs[d]

    def _check(self, other: "TruncatedSeries"):
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.var == other.var
            and self.order == other.order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.var, [-a for a in self.coeffs])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.order, other.order)
        return TruncatedSeries(self.var, [self[d] + other[d] for d in range(n + 1)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.order, other.order)
        return TruncatedSeries(self.var, [self[d] - other[d] for d in range(n + 1)])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.order, other.order)
        zero = self.coeffs[0] * 0
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.var, out)

    def scale(self, s) -> "TruncatedSeries":
        return TruncatedSeries(self.var, [a * s for a in self.coeffs])

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return TruncatedSeries(self.var, self.coeffs[: order + 1])

    def retag(self, var: str) -> "TruncatedSeries":
        return TruncatedSeries(var, self.coeffs)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    # -- field-like operations -------------------------------------------
    def recip(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise SeriesError("recip needs an invertible constant term")
        inv0 = _ring_one(a0 * 0) if a0 == 1 else _invert(a0)
        out = [inv0]
        for d in range(1, self.order + 1):
            s = self.coeffs[0] * 0
            for j in range(1, d + 1):
                if self.coeffs[j] != 0:
                    s = s + self.coeffs[j] * out[d - j]
            out.append(-inv0 * s)
        return TruncatedSeries(self.var, out)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise SeriesError("exp needs a zero constant term")
        zero = self.coeffs[0] * 0
        out = [zero + _ring_one(zero)]
        for d in range(1, self.order + 1):
            s = zero
            for j in range(1, d + 1):
                if self.coeffs[j] != 0:
                    s = s + (self.coeffs[j] * out[d - j]) * Q(j)
            out.append(s * Q(1, d))
        return TruncatedSeries(self.var, out)

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise SeriesError("log needs constant term 1")
        zero = self.coeffs[0] * 0
        out = [zero]
        for d in range(1, self.order + 1):
            s = self.coeffs[d] * Q(d)
            for j in range(1, d):
                if self.coeffs[d - j] != 0:
                    s = s - (out[j] * self.coeffs[d - j]) * Q(j)
            out.append(s * Q(1, d))
        return TruncatedSeries(self.var, out)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute the variable by `inner`, which must vanish at 0.

        The result lives in inner's variable, truncated at min(orders).
        """
        if inner.coeffs[0] != 0:
            raise SeriesError("composition needs inner series with zero constant term")
        n = min(self.order, inner.order)
        pows = power_table(inner.truncate(n), n)
        zero0 = self.coeffs[0] * 0
        out = [zero0] * (n + 1)
        for d in range(n + 1):
            a = self.coeffs[d]
            if a == 0:
                continue
            pw = pows[d]
            for j in range(n + 1):
                if pw.coeffs[j] != 0:
                    out[j] = out[j] + a * pw.coeffs[j]
        return TruncatedSeries(inner.var, out)

    def dcoeff(self, s: int):
        """Value of the normalized s-th derivative at 0 (the coefficient of var^s)."""
        if s > self.order:
            raise SeriesError(f"coefficient {s} beyond truncation order {self.order}")
        return self.coeffs[s]

    def __repr__(self) -> str:
        bits = [f"{a!r}*{self.var}^{d}" for d, a in enumerate(self.coeffs) if a != 0]
        return " + ".join(bits) if bits else "0"


def _ring_one(zero):
    """The multiplicative unit of the coefficient ring containing `zero`."""
    one = getattr(zero, "one", None)
    if callable(one):
        return one()
    return zero + 1


def _invert(a):
    try:
        return a ** (-1)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SeriesError(f"cannot invert constant term {a!r}")


def power_table(s: TruncatedSeries, max_power: int) -> list[TruncatedSeries]:
    """[s^0, s^1, ..., s^max_power], all at s.order."""
    one = _ring_one(s.coeffs[0] * 0)
    pows = [TruncatedSeries.constant(s.var, one, s.order)]
    for _ in range(max_power):
        pows.append(pows[-1] * s)
    return pows


def revert_exp_map(g: TruncatedSeries) -> TruncatedSeries:
    """Invert q -> q*exp(g(q)): return phi with phi(u)*exp(g(phi(u))) = u.

    g must have zero constant term.  Fixed-point iteration
    phi <- u*exp(-g(phi)) gains one correct order per step; the round trip
    is verified exactly before returning.
    """
    if g.coeffs[0] != 0:
        raise SeriesError("reversion needs zero constant term")
    n = g.order
    u = TruncatedSeries.gen("u", n) if n >= 1 else TruncatedSeries("u", [ZERO])
    gu = g.retag("u")
    phi = u
    for _ in range(n):
        phi = u * (-gu.compose(phi)).exp()
    if phi * gu.compose(phi).exp() != u:
        raise SeriesError("series reversion failed to converge to full order")
    return phi

"""q-series whose coefficients are polynomials in the formal variable t.

These live in the coordinate ring before the mirror change of variables:
q stands in for e^t, so d/dt acts on the coefficient of q^d as
p(t) -> p'(t) + d*p(t).
"""
from __future__ import annotations

from .poly import Poly
from .scalars import ONE, Q, ZERO
from .series import SeriesError, TruncatedSeries


class TPolySeries:
    """Truncated series in q = e^t with Poly-in-t coefficients."""

    __slots__ = ("coeffs", "tcap")

    def __init__(self, coeffs, tcap: int):
        self.coeffs = [c if isinstance(c, Poly) else Poly.const(c) for c in coeffs]
        self.tcap = tcap
        for d, c in enumerate(self.coeffs):
            if c.degree > d + tcap:
                raise SeriesError(
                    f"t-degree {c.degree} of the q^{d} coefficient exceeds cap {d + tcap}"
                )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> Poly:
        return self.coeffs[d]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TPolySeries)
            and self.order == other.order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __add__(self, other: "TPolySeries") -> "TPolySeries":
        n = min(self.order, other.order)
        return TPolySeries(
            [self[d] + other[d] for d in range(n + 1)], max(self.tcap, other.tcap)
        )

    def __sub__(self, other: "TPolySeries") -> "TPolySeries":
        n = min(self.order, other.order)
        return TPolySeries(
            [self[d] - other[d] for d in range(n + 1)], max(self.tcap, other.tcap)
        )

    def __mul__(self, other: "TPolySeries") -> "TPolySeries":
        n = min(self.order, other.order)
        out = [Poly() for _ in range(n + 1)]
        for i in range(n + 1):
            if self[i].is_zero():
                continue
            for j in range(n + 1 - i):
                if not other[j].is_zero():
                    out[i + j] = out[i + j] + self[i] * other[j]
        return TPolySeries(out, self.tcap + other.tcap)

    def mul_scalar_series(self, s: TruncatedSeries) -> "TPolySeries":
        """Multiply by a q-series with plain rational coefficients."""
        n = min(self.order, s.order)
        out = [Poly() for _ in range(n + 1)]
        for i in range(n + 1):
            if self[i].is_zero():
                continue
            for j in range(n + 1 - i):
                if s[j] != 0:
                    out[i + j] = out[i + j] + self[i] * s[j]
        return TPolySeries(out, self.tcap)

    def dt(self) -> "TPolySeries":
        """d/dt with q = e^t: the q^d coefficient p(t) maps to p'(t) + d*p(t)."""
        out = []
        for d, p in enumerate(self.coeffs):
            dp = Poly([p.c[k] * Q(k) for k in range(1, len(p.c))])
            out.append(dp + p * Q(d))
        return TPolySeries(out, self.tcap)

    def t_degree(self) -> int:
        return max((p.degree for p in self.coeffs), default=-1)

    def to_scalar_series(self, var: str = "q") -> TruncatedSeries:
        """Forget t, requiring every coefficient to be t-free."""
        if self.t_degree() > 0:
            raise SeriesError("series has residual t-dependence")
        return TruncatedSeries(var, [p[0] for p in self.coeffs])

    def split_linear_t(self) -> tuple[TruncatedSeries, TruncatedSeries]:
        """Split a t-degree-<=1 series into (t-linear part, t-free part)."""
        if self.t_degree() > 1:
            raise SeriesError("series is not linear in t")
        lin = TruncatedSeries("q", [p[1] for p in self.coeffs])
        const = TruncatedSeries("q", [p[0] for p in self.coeffs])
        return lin, const

    @staticmethod
    def from_scalar_series(s: TruncatedSeries, tcap: int = 0) -> "TPolySeries":
        return TPolySeries([Poly.const(c) for c in s.coeffs], tcap)

    def __repr__(self) -> str:
        return " + ".join(f"({p!r})q^{d}" for d, p in enumerate(self.coeffs))


def exp_wt_coeff(scalar_tail: list, q_power: int) -> Poly:
    """Coefficient of w^q_power in e^{wt} * sum_s scalar_tail[s] w^s.

    scalar_tail holds rationals; the result is sum_m t^m/m! * tail[q-m].
    """
    coeffs = [ZERO] * (q_power + 1)
    fact = ONE
    for m in range(q_power + 1):
        if m:
            fact = fact * Q(m)
        s = q_power - m
        if s < len(scalar_tail) and scalar_tail[s] != 0:
            coeffs[m] = scalar_tail[s] / fact
    return Poly(coeffs)

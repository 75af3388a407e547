"""Hypergeometric ladder, mirror map, and the nilpotent-class series.

build_ladder produces the triangular family of q-series obtained from a
factorial-ratio generating function by repeated normalize-and-differentiate
steps; its diagonal entries are the units that normalize each rung of the
ladder operator.  MirrorSeries is the ambient data structure for series in
u whose coefficients are polynomials in the nilpotent hyperplane class x
(x^n = 0) with finite Laurent windows in h.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .laurent import LaurentWindow, WindowCapError
from .scalars import ONE, Q, ZERO
from .series import SeriesError, TruncatedSeries, power_table, revert_exp_map
from .tseries import TPolySeries, exp_wt_coeff


class LadderError(ValueError):
    pass


@dataclass
class LadderTable:
    """Entries (p, q) for 0 <= p <= q <= p_max, each a TPolySeries in q=e^t."""

    n: int
    a: int
    p_max: int
    u_order: int
    entries: dict[tuple[int, int], TPolySeries] = field(default_factory=dict)

    def entry(self, p: int, q: int) -> TPolySeries:
        return self.entries[(p, q)]

    def diagonal(self, p: int) -> TruncatedSeries:
        """Diagonal entry as a plain q-series (t-degree 0, constant term 1)."""
        s = self.entries[(p, p)].to_scalar_series()
        if s[0] != 1:
            raise LadderError(f"diagonal {p} has constant term {s[0]}, expected 1")
        return s

    def off_diagonal_ratio(self, p: int) -> TruncatedSeries:
        """t-free part of entry(p, p+1)/entry(p, p), whose t-part must be exactly t.

        The ratio has the shape t + c(q); residual t-dependence beyond that
        signals an upstream bug.
        """
        ratio = self.entry(p, p + 1).mul_scalar_series(self.diagonal(p).recip())
        lin, const = ratio.split_linear_t()
        expect = [ONE] + [ZERO] * (ratio.order)
        if lin.coeffs != expect[: ratio.order + 1]:
            raise LadderError(f"ladder ratio at rung {p} is not of the form t + c(q)")
        return const


def build_ladder(n: int, a: int, p_max: int, u_order: int) -> LadderTable:
    """Build the ladder family for a degree-a hypersurface in P^{n-1}.

    Row zero comes from expanding, to order p_max in w,

        e^{wt} * sum_d q^d w^{(n-a)d} prod_{r=1..ad}(aw+r) / prod_{r=1..d}(w+r)^n

    (for a = n the w-power weight is absent); higher rows are the
    derivative of the previous row normalized by its diagonal entry.
    """
    if p_max < 0 or u_order < 0:
        raise LadderError("p_max and u_order must be nonnegative")
    if not 1 <= a <= n:
        raise LadderError(f"need 1 <= a <= n, got a={a}, n={n}")
    table = LadderTable(n, a, p_max, u_order)
    # w-expansion of the degree-d summand, to w-order p_max
    tails: list[list] = []
    for d in range(u_order + 1):
        num = _poly_product_w(a, a * d, p_max)  # prod (aw + r), r = 1..ad
        den = _unit_power_series_w(d, n, p_max)  # prod (w + r)^n inverted
        tail = _convolve(num, den, p_max)
        shift = (n - a) * d
        if shift:
            tail = [ZERO] * shift + tail[: max(p_max + 1 - shift, 0)]
        tails.append(tail)
    for q in range(p_max + 1):
        coeffs = [exp_wt_coeff(tails[d], q) for d in range(u_order + 1)]
        table.entries[(0, q)] = TPolySeries(coeffs, tcap=p_max)
    for p in range(1, p_max + 1):
        dinv = table.diagonal(p - 1).recip()
        for q in range(p, p_max + 1):
            ratio = table.entry(p - 1, q).mul_scalar_series(dinv)
            table.entries[(p, q)] = ratio.dt()
    return table


def _poly_product_w(a: int, count: int, order: int) -> list:
    """Coefficients in w of prod_{r=1..count} (a*w + r), truncated."""
    out = [ONE] + [ZERO] * order
    for r in range(1, count + 1):
        prev = out
        out = [ZERO] * (order + 1)
        rr = Q(r)
        for k in range(order + 1):
            v = prev[k] * rr
            if k:
                v += prev[k - 1] * a
            out[k] = v
    return out


def _unit_power_series_w(d: int, n: int, order: int) -> list:
    """Coefficients in w of prod_{r=1..d} (w + r)^(-n), truncated.

    Equals (d!)^(-n) prod (1 + w/r)^(-n); each factor expands by the
    binomial series with exponent -n.
    """
    out = [ONE] + [ZERO] * order
    for r in range(1, d + 1):
        binom = [ONE]
        for k in range(1, order + 1):
            binom.append(binom[-1] * Q(-(n + k - 1), k) / r)
        out = _convolve(out, binom, order)
    scale = Q(1, math.factorial(d) ** n)
    return [x * scale for x in out]


def _convolve(a: list, b: list, order: int) -> list:
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x == 0:
            continue
        for j in range(order + 1 - i):
            if b[j] != 0:
                out[i + j] += x * b[j]
    return out


@dataclass
class MirrorMap:
    """The change of variables u = q*exp(g(q)) between the two coordinates."""

    g: TruncatedSeries  # q-series, zero constant term, rational coefficients

    @property
    def is_trivial(self) -> bool:
        return self.g.is_zero()

    def inverse(self) -> TruncatedSeries:
        """phi(u) with phi * exp(g(phi)) = u."""
        return revert_exp_map(self.g)


def mirror_map(table: LadderTable) -> MirrorMap:
    """Extract the coordinate change from the first ladder column."""
    return MirrorMap(table.off_diagonal_ratio(0))


# ---------------------------------------------------------------------------
# series over the nilpotent hyperplane class
# ---------------------------------------------------------------------------


class MirrorSeries:
    """u-series with coefficients sum_k x^k * (Laurent window in h), x^n = 0.

    Window caps are fixed at construction: [-(u_order + n + 2), n + 2] for
    a = n, widened by (n - a)*u_order below when a < n (each u-degree then
    sinks (n - a) powers of h deeper).  Every operation re-checks the caps;
    an overflow raises WindowCapError because in this calculus all windows
    are provably bounded and an overflow indicates a bug, not a storage
    problem.
    """

    __slots__ = ("n", "a", "u_order", "coeffs", "cap_lo", "cap_hi")

    def __init__(self, n: int, a: int, u_order: int, coeffs=None):
        self.n = n
        self.a = a
        self.u_order = u_order
        self.cap_lo = -((n - a + 1) * u_order + n + 2)
        self.cap_hi = n + 2
        if coeffs is None:
            coeffs = [
                [LaurentWindow() for _ in range(n)] for _ in range(u_order + 1)
            ]
        self.coeffs = coeffs
        self.check_caps()

    def check_caps(self) -> None:
        for d, row in enumerate(self.coeffs):
            for k, w in enumerate(row):
                w.check_cap(self.cap_lo, self.cap_hi, f"u^{d} x^{k}")

    def clone_empty(self) -> "MirrorSeries":
        return MirrorSeries(self.n, self.a, self.u_order)

    def window(self, d: int, k: int) -> LaurentWindow:
        return self.coeffs[d][k]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MirrorSeries)
            and (self.n, self.a, self.u_order) == (other.n, other.a, other.u_order)
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return all(w.is_zero() for row in self.coeffs for w in row)

    def add(self, other: "MirrorSeries") -> "MirrorSeries":
        out = self.clone_empty()
        for d in range(self.u_order + 1):
            for k in range(self.n):
                out.coeffs[d][k] = self.coeffs[d][k] + other.coeffs[d][k]
        out.check_caps()
        return out

    def scale(self, s) -> "MirrorSeries":
        out = self.clone_empty()
        for d in range(self.u_order + 1):
            for k in range(self.n):
                out.coeffs[d][k] = self.coeffs[d][k] * s
        return out

    def mul_x(self) -> "MirrorSeries":
        """Multiply by the hyperplane class; the top power falls off (x^n = 0)."""
        out = self.clone_empty()
        for d in range(self.u_order + 1):
            for k in range(self.n - 1):
                out.coeffs[d][k + 1] = self.coeffs[d][k]
        return out

    def mul_h(self, k: int = 1) -> "MirrorSeries":
        out = self.clone_empty()
        for d in range(self.u_order + 1):
            for j in range(self.n):
                out.coeffs[d][j] = self.coeffs[d][j].shift(k)
        out.check_caps()
        return out

    def dt_scale(self) -> "MirrorSeries":
        """d/dt in the q = e^t coordinate: multiply the u^d term by d."""
        out = self.clone_empty()
        for d in range(self.u_order + 1):
            for k in range(self.n):
                out.coeffs[d][k] = self.coeffs[d][k] * Q(d)
        return out

    def conv_scalar_series(self, s: TruncatedSeries) -> "MirrorSeries":
        """Multiply by a u/q-series with plain rational coefficients."""
        out = self.clone_empty()
        for d2 in range(min(s.order, self.u_order) + 1):
            c = s[d2]
            if c == 0:
                continue
            for d1 in range(self.u_order + 1 - d2):
                row = self.coeffs[d1]
                for k in range(self.n):
                    if not row[k].is_zero():
                        out.coeffs[d1 + d2][k] = out.coeffs[d1 + d2][k] + row[k] * c
        out.check_caps()
        return out

    def substitute_u(self, inner_powers: list[TruncatedSeries]) -> "MirrorSeries":
        """Substitute u -> inner(u), given precomputed powers of inner.

        inner_powers[d] is inner^d truncated at u_order; inner has zero
        constant term and rational coefficients.
        """
        out = self.clone_empty()
        for d in range(self.u_order + 1):
            pw = inner_powers[d]
            for k in range(self.n):
                w = self.coeffs[d][k]
                if w.is_zero():
                    continue
                for D in range(d, self.u_order + 1):
                    c = pw[D]
                    if c != 0:
                        out.coeffs[D][k] = out.coeffs[D][k] + w * c
        out.check_caps()
        return out

    def nonneg_h_part(self, d: int, k: int) -> LaurentWindow:
        return self.coeffs[d][k].nonneg_part()

    def __repr__(self) -> str:
        bits = []
        for d, row in enumerate(self.coeffs):
            for k, w in enumerate(row):
                if not w.is_zero():
                    bits.append(f"u^{d} x^{k} ({w!r})")
        return "MirrorSeries[" + "; ".join(bits) + "]"


def build_seed_series(n: int, a: int, u_order: int, kind: str) -> MirrorSeries:
    """The hypergeometric series over the nilpotent class, zero torus weights.

    kind = "hyperplane": euler factors r = 1..ad, leading class factor x,
        normalized by the inverse of the weight-zero ladder unit; the u^0
        term is x.
    kind = "unit": euler factors r = 0..ad-1, no prefactors; u^0 term is 1.
    kind = "normalized": "hyperplane" without the leading x; u^0 term is 1.
    """
    if kind not in ("hyperplane", "unit", "normalized"):
        raise ValueError(f"unknown seed-series kind {kind!r}")
    out = MirrorSeries(n, a, u_order)
    for d in range(u_order + 1):
        num = _euler_factor_poly(n, a, d, kind)  # x-poly, coeff j carries h^(ad-j)
        den = _inverse_denominator_x(n, d)  # x-poly, coeff m carries h^(-nd-m)
        for k in range(n):
            val = ZERO
            for j in range(min(k, a * d) + 1):
                val += num[j] * den[k - j]
            if val != 0:
                out.coeffs[d][k] = LaurentWindow.monomial(val, (a - n) * d - k)
    out.check_caps()
    if kind in ("hyperplane", "normalized"):
        i00_inv = row_zero_unit(n, a, u_order).recip()
        out = out.conv_scalar_series(i00_inv)
        if kind == "hyperplane":
            out = out.mul_x()
    return out


def _euler_factor_poly(n: int, a: int, d: int, kind: str) -> list:
    """x-coefficients of the twisting euler product, h-powers implicit.

    prod (ax + r h) over r = 1..ad (or r = 0..ad-1 for kind "unit") expanded
    in x; the x^j coefficient carries h^(ad - j), tracked by position.
    """
    rng = range(0, a * d) if kind == "unit" else range(1, a * d + 1)
    out = [ONE] + [ZERO] * (n - 1)
    for r in rng:
        prev = out
        out = [ZERO] * n
        rr = Q(r)
        for j in range(n):
            v = prev[j] * rr
            if j:
                v += prev[j - 1] * a
            out[j] = v
    return out


def _inverse_denominator_x(n: int, d: int) -> list:
    """x-coefficients of prod_{r=1..d} (x + r h)^(-n); x^m carries h^(-nd-m)."""
    out = [ONE] + [ZERO] * (n - 1)
    for r in range(1, d + 1):
        binom = [ONE]
        for k in range(1, n):
            binom.append(binom[-1] * Q(-(n + k - 1), k) / r)
        nxt = [ZERO] * n
        for i in range(n):
            if out[i] == 0:
                continue
            for j in range(n - i):
                nxt[i + j] += out[i] * binom[j]
        out = nxt
    scale = Q(1, math.factorial(d) ** n)
    return [x * scale for x in out]


def row_zero_unit(n: int, a: int, u_order: int) -> TruncatedSeries:
    """The weight-zero ladder unit: 1 + sum_d q^d (ad)!/(d!)^n for a = n.

    For a < n the d >= 1 terms sit in positive w-powers, so the unit is 1.
    """
    if a < n:
        return TruncatedSeries.constant("q", ONE, u_order)
    coeffs = [
        Q(math.factorial(n * d), math.factorial(d) ** n) for d in range(u_order + 1)
    ]
    return TruncatedSeries("q", coeffs)


def apply_ladder(p: int, table: LadderTable, m: MirrorSeries) -> MirrorSeries:
    """Apply p rungs of the conjugated ladder operator.

    Each rung k maps M to diag_k^{-1} * (x + h*d/dt) M; the class term x
    comes from conjugating the derivative by e^{xt/h}.
    """
    if p < 0:
        raise LadderError("ladder rung count must be nonnegative")
    if p > table.p_max:
        raise LadderError(f"ladder needs diagonals up to {p}, table has {table.p_max}")
    out = m
    for k in range(1, p + 1):
        dinv = table.diagonal(k).recip()
        out = out.mul_x().add(out.dt_scale().mul_h()).conv_scalar_series(dinv)
    return out

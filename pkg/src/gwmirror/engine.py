"""Mirror-formula engine: transformed series, invariant extraction, BPS.

For a degree-a hypersurface in P^{n-1} the engine builds the family of
level series (level p ranges over -1..n-1), changes coordinates through
the mirror map, assembles the two-point series, and extracts exact
two-point descendant invariants, which the multiple-cover transform turns
into conjecturally integral curve counts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .hypergeom import (
    LadderTable,
    MirrorMap,
    MirrorSeries,
    build_ladder,
    build_seed_series,
    mirror_map,
)
from .laurent import BivWindow, LaurentWindow
from .scalars import ONE, Q, ZERO
from .series import TruncatedSeries, power_table


class EngineError(ValueError):
    pass


@dataclass
class TransformData:
    """Coordinate change u = q*e^{g(q)} plus the scalar exponential prefactor."""

    g: TruncatedSeries  # rational q-series, zero constant term
    c01: TruncatedSeries  # rational q-series, zero constant term

    def is_trivial(self) -> bool:
        return self.g.is_zero() and self.c01.is_zero()


def _neg_power_factorial_table(s: TruncatedSeries, m_max: int) -> list[TruncatedSeries]:
    """[(-s)^m / m!] for m = 0..m_max, truncated like s."""
    out = [TruncatedSeries.constant(s.var, ONE, s.order)]
    neg = -s
    for m in range(1, m_max + 1):
        out.append((out[-1] * neg).scale(Q(1, m)))
    return out


def mirror_transform(m: MirrorSeries, data: TransformData) -> MirrorSeries:
    """Multiply by e^{-(g*x + c01)/h} and re-expand in u = q*e^{g(q)}."""
    out = m
    if not data.g.is_zero():
        gm = _neg_power_factorial_table(data.g, m.n - 1)
        acc = out.conv_scalar_series(gm[0])
        shifted = out
        for mm in range(1, m.n):
            shifted = shifted.mul_x().mul_h(-1)
            if shifted.is_zero() or gm[mm].is_zero():
                break
            acc = acc.add(shifted.conv_scalar_series(gm[mm]))
        out = acc
    if not data.c01.is_zero():
        cm = _neg_power_factorial_table(data.c01, m.u_order)
        acc = out.conv_scalar_series(cm[0])
        shifted = out
        for mm in range(1, m.u_order + 1):
            if cm[mm].is_zero():
                break
            shifted = shifted.mul_h(-1)
            acc = acc.add(shifted.conv_scalar_series(cm[mm]))
        out = acc
    if not data.g.is_zero():
        out = out.substitute_u(_phi_powers(data.g, m.u_order))
    return out


def _phi_powers(g: TruncatedSeries, u_order: int) -> list[TruncatedSeries]:
    from .series import revert_exp_map

    phi = revert_exp_map(g.truncate(u_order) if g.order > u_order else g)
    return power_table(phi, u_order)


@dataclass(frozen=True)
class InvariantKey:
    """Degree plus (descendant exponent, hyperplane power) per marked point."""

    d: int
    a1: int
    b1: int
    a2: int
    b2: int

    def validate(self, n: int) -> None:
        if self.d < 1:
            raise EngineError("two-point invariants need degree >= 1")
        if not (0 <= self.b1 <= n - 1 and 0 <= self.b2 <= n - 1):
            raise EngineError(f"hyperplane powers must lie in 0..{n - 1}")
        if self.a1 < 0 or self.a2 < 0:
            raise EngineError("descendant exponents must be nonnegative")

    def dimension_ok(self, n: int, a: int) -> bool:
        return self.a1 + self.b1 + self.a2 + self.b2 == n - 3 + (n - a) * self.d


@dataclass
class ExtractResult:
    """An exact invariant value, or a structural zero with its reason."""

    value: object
    reason: str | None = None


class TwoPointSeries:
    """Quotient of the level-product sum by (h1 + h2), degrees >= 1 only."""

    def __init__(self, n: int, a: int, u_order: int):
        self.n = n
        self.a = a
        self.u_order = u_order
        # coeffs[d][k1][k2], d >= 1 (index 0 unused and kept empty)
        self.coeffs: list[list[list[BivWindow]]] = [
            [[BivWindow() for _ in range(n)] for _ in range(n)]
            for _ in range(u_order + 1)
        ]

    def window(self, d: int, k1: int, k2: int) -> BivWindow:
        return self.coeffs[d][k1][k2]

    def swap_violations(self) -> list[tuple[int, int, int]]:
        """Coefficients breaking the simultaneous (h1,x1)<->(h2,x2) symmetry."""
        bad = []
        for d in range(1, self.u_order + 1):
            for k1 in range(self.n):
                for k2 in range(self.n):
                    if self.coeffs[d][k1][k2] != self.coeffs[d][k2][k1].swapped():
                        bad.append((d, k1, k2))
        return bad


class HypersurfaceEngine:
    """All mirror-side series for one (n, a) at a fixed truncation order."""

    def __init__(self, n: int, a: int, u_order: int):
        if not 1 <= a <= n:
            raise EngineError(f"need 1 <= a <= n, got a={a}, n={n}")
        if n < 2:
            raise EngineError("ambient projective space needs n >= 2")
        self.n = n
        self.a = a
        self.u_order = u_order
        self.table: LadderTable = build_ladder(n, a, max(n - 1, 1), u_order)
        self._seed_hyper = build_seed_series(n, a, u_order, "hyperplane")
        self._seed_unit = build_seed_series(n, a, u_order, "unit")
        self._seed_norm = build_seed_series(n, a, u_order, "normalized")
        g = (
            mirror_map(self.table).g
            if a == n
            else TruncatedSeries.zeros("q", u_order)
        )
        c01 = TruncatedSeries(
            "q",
            [self._seed_hyper.window(d, 1).get(-1) for d in range(u_order + 1)],
        )
        if c01[0] != 0:
            raise EngineError("exponential prefactor has a nonzero constant term")
        self.transform = TransformData(g, c01)
        self._raw_levels: dict[int, MirrorSeries] = {}
        self._levels: dict[int, MirrorSeries] = {}
        self._two_point: TwoPointSeries | None = None
        self._onepoint: MirrorSeries | None = None

    # -- level series on the hypergeometric side -------------------------
    def raw_level(self, p: int) -> MirrorSeries:
        """Level series before the mirror transform (q coordinate)."""
        if not -1 <= p <= self.n - 1:
            raise EngineError(f"level must lie in -1..{self.n - 1}, got {p}")
        if p in self._raw_levels:
            return self._raw_levels[p]
        if p == -1:
            out = self._seed_unit
        elif p == 0:
            out = self._seed_hyper
        elif self.a == self.n:
            prev = self.raw_level(p - 1)
            dinv = self.table.diagonal(p).recip()
            out = prev.mul_x().add(prev.dt_scale().mul_h()).conv_scalar_series(dinv)
        else:
            out = self._raw_level_general(p)
        self._raw_levels[p] = out
        return out

    def _raw_level_general(self, p: int) -> MirrorSeries:
        """Ladder step for a < n, where the rung data carries corrections.

        The 1/h slice of the previous level is c0*x^(p+1) + sum_r c_r
        x^(p+1-r); the rung divides by 1 + dt(c0) and subtracts dt(c_r)
        times lower levels.  At the top rung (p = n-1) the x^(p+1) slice
        is invisible (x^n = 0) but the combination is identically zero, so
        no division is needed and the result must vanish.
        """
        prev = self.raw_level(p - 1)
        work = prev.mul_x().add(prev.dt_scale().mul_h())
        n = self.n
        for r in range(1, p + 1):
            k = p + 1 - r
            c_r = TruncatedSeries(
                "q", [prev.window(d, k).get(-1) for d in range(self.u_order + 1)]
            )
            if c_r.is_zero():
                continue
            dt_c = TruncatedSeries(
                "q", [c_r[d] * Q(d) for d in range(self.u_order + 1)]
            )
            work = work.add(self.raw_level(p - r).conv_scalar_series(dt_c).scale(-ONE))
        if p + 1 <= n - 1:
            c0 = TruncatedSeries(
                "q", [prev.window(d, p + 1).get(-1) for d in range(self.u_order + 1)]
            )
            diag = TruncatedSeries(
                "q",
                [
                    (ONE if d == 0 else ZERO) + c0[d] * Q(d)
                    for d in range(self.u_order + 1)
                ],
            )
            work = work.conv_scalar_series(diag.recip())
        elif not work.is_zero():
            raise EngineError(
                "top-level series did not vanish; ladder correction data is wrong"
            )
        return work

    # -- transformed series ----------------------------------------------
    def level(self, p: int) -> MirrorSeries:
        if p not in self._levels:
            self._levels[p] = mirror_transform(self.raw_level(p), self.transform)
        return self._levels[p]

    def onepoint(self) -> MirrorSeries:
        """The level-0 series divided by its leading class factor."""
        if self._onepoint is None:
            self._onepoint = mirror_transform(self._seed_norm, self.transform)
        return self._onepoint

    def two_point(self) -> TwoPointSeries:
        if self._two_point is not None:
            return self._two_point
        n, u_order = self.n, self.u_order
        levels = {p: self.level(p) for p in range(-1, n)}
        tp = TwoPointSeries(n, self.a, u_order)
        scale = Q(self.a)
        for d in range(1, u_order + 1):
            for k1 in range(n):
                for k2 in range(n):
                    acc = BivWindow()
                    for p in range(n):
                        zl, zr = levels[p], levels[n - 2 - p]
                        for d1 in range(d + 1):
                            w1 = zl.window(d1, k1)
                            if w1.is_zero():
                                continue
                            w2 = zr.window(d - d1, k2)
                            if w2.is_zero():
                                continue
                            acc = acc + BivWindow.outer(w1, w2)
                    tp.coeffs[d][k1][k2] = acc.scale(scale).divide_h1_plus_h2()
        self._two_point = tp
        return tp

    # -- extraction --------------------------------------------------------
    def extract(self, key: InvariantKey) -> ExtractResult:
        key.validate(self.n)
        if key.d > self.u_order:
            raise EngineError(
                f"degree {key.d} beyond truncation order {self.u_order}"
            )
        if not key.dimension_ok(self.n, self.a):
            return ExtractResult(ZERO, reason="dimension")
        w = self.two_point().window(key.d, self.n - 1 - key.b1, self.n - 1 - key.b2)
        return ExtractResult(w.get(-1 - key.a1, -1 - key.a2))

    def gw_values(self, a1: int, b1: int, a2: int, b2: int, d_max: int) -> dict[int, object]:
        return {
            d: self.extract(InvariantKey(d, a1, b1, a2, b2)).value
            for d in range(1, d_max + 1)
        }


# -- multiple-cover transform ------------------------------------------------


@dataclass
class BpsRow:
    d: int
    gw: object
    bps: object


@dataclass
class BPSTable:
    n: int
    a: int
    insertions: tuple[int, int, int, int]  # (a1, b1, a2, b2)
    rows: list[BpsRow]

    def integral(self) -> bool:
        return all(r.bps.denominator == 1 for r in self.rows)


def bps_transform(gw: dict[int, object], d_max: int) -> list[BpsRow]:
    """Remove multiple covers: n_d = gw_d - sum_{k|d, k>=2} n_{d/k} / k.

    This is the two-marked-point genus-zero transform (cover factor
    k^(m-3) with m = 2).
    """
    bps: dict[int, object] = {}
    rows = []
    for d in range(1, d_max + 1):
        if d not in gw:
            raise EngineError(f"missing invariant at degree {d}")
        val = gw[d]
        for k in range(2, d + 1):
            if d % k == 0:
                val = val - bps[d // k] * Q(1, k)
        bps[d] = val
        rows.append(BpsRow(d, gw[d], val))
    return rows

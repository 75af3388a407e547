"""Fixed-point verification machinery at specialized torus weights.

Everything here works with evaluations at the n torus-fixed points of
projective space: a series is stored per fixed point with coefficients in
the exact field Q(h).  The module provides the degree recursion and its
checker, the two-series pairing and its polynomiality test (in two
independent modes), the five admissible transforms, the equivariant level
builder with its correction-series recovery, the mirror transform at
fixed points, identity suites, and the constructive reconstruction of a
series from its h-polynomial part.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bivar import BivRat
from .hypergeom import LadderTable, row_zero_unit
from .interp import lagrange_cardinals, lagrange_interpolate
from .linalg import InconsistentSystem, UnderdeterminedSystem, solve_exact
from .poly import Poly, RatFn, poly_gcd, rational_roots
from .scalars import ONE, Q, ZERO, prod, qstr
from .series import TruncatedSeries, power_table, revert_exp_map


class EquivariantError(ValueError):
    pass


class ResonantWeights(EquivariantError):
    pass


class ReconstructionError(EquivariantError):
    pass


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------


class AlphaSpec:
    """n pairwise-distinct nonzero rational torus weights with cached data."""

    def __init__(self, n: int, alpha):
        alpha = tuple(Q(x) if isinstance(x, int) else x for x in alpha)
        if len(alpha) != n:
            raise EquivariantError(f"expected {n} weights, got {len(alpha)}")
        if len(set(alpha)) != n:
            raise ResonantWeights("torus weights must be pairwise distinct")
        if any(x == 0 for x in alpha):
            raise ResonantWeights("zero torus weights break fixed-point data")
        self.n = n
        self.alpha = alpha
        # elementary symmetric values sigma_0..sigma_n
        sig = [ONE]
        for x in alpha:
            sig = (
                [sig[0]]
                + [sig[k] + x * sig[k - 1] for k in range(1, len(sig))]
                + [x * sig[-1]]
            )
        self.sigma = tuple(sig)
        # 1 / prod_{k != i} (alpha_i - alpha_k)
        self.point_weight = tuple(
            1 / prod(alpha[i] - alpha[k] for k in range(n) if k != i)
            for i in range(n)
        )

    def validate(self, a: int, d_max: int) -> None:
        """Reject weights that hit a zero denominator anywhere in range.

        Covers the recursion-coefficient denominators, evaluation of a
        series at the recursion points, and the node-smoothing factors of
        fixed-point sums, for all degrees up to d_max.
        """
        al = self.alpha
        n = self.n
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for d in range(1, d_max + 1):
                    w = (al[j] - al[i]) / d
                    for r in range(1, d + 1):
                        for k in range(n):
                            if (r, k) == (d, j):
                                continue
                            if al[i] - al[k] + r * w == 0:
                                raise ResonantWeights(
                                    f"recursion resonance: a{i+1}-a{k+1}"
                                    f"+{r}*(a{j+1}-a{i+1})/{d} = 0"
                                )
                    for r in range(1, d_max - d + 1):
                        for k in range(n):
                            if al[j] - al[k] + r * w == 0:
                                raise ResonantWeights(
                                    f"evaluation resonance at point {j+1}, "
                                    f"h = (a{j+1}-a{i+1})/{d}"
                                )
        for v in range(n):
            for x in range(n):
                for y in range(n):
                    if x == v or y == v:
                        continue
                    for d1 in range(1, d_max):
                        for d2 in range(1, d_max - d1 + 1):
                            if (al[v] - al[x]) * d2 + (al[v] - al[y]) * d1 == 0:
                                raise ResonantWeights(
                                    f"vertex smoothing resonance at labels "
                                    f"({x+1},{v+1},{y+1}), degrees ({d1},{d2})"
                                )

    def __repr__(self) -> str:
        return f"AlphaSpec({self.n}, {[qstr(x) for x in self.alpha]})"


def choose_alpha_spec(n: int, a: int, d_max: int, alpha=None) -> AlphaSpec:
    """Build a validated AlphaSpec, falling back over standard candidates."""
    if alpha is not None:
        spec = AlphaSpec(n, alpha)
        spec.validate(a, d_max)
        return spec
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    candidates = [
        [Q(i) for i in range(1, n + 1)],
        [Q(p) for p in primes[:n]],
        [Q(3) ** i for i in range(n)],
        [Q(5) ** i for i in range(n)],
    ]
    last_err: Exception | None = None
    for cand in candidates:
        try:
            spec = AlphaSpec(n, cand)
            spec.validate(a, d_max)
            return spec
        except ResonantWeights as e:
            last_err = e
    raise ResonantWeights(f"no non-resonant default weights found: {last_err}")


# ---------------------------------------------------------------------------
# fixed-point series
# ---------------------------------------------------------------------------


class FixedPointSeries:
    """Per fixed point i, a truncated u-series with coefficients in Q(h)."""

    __slots__ = ("n", "u_order", "coeffs")

    def __init__(self, n: int, u_order: int, coeffs=None):
        self.n = n
        self.u_order = u_order
        if coeffs is None:
            coeffs = [[RatFn.zero() for _ in range(u_order + 1)] for _ in range(n)]
        self.coeffs = coeffs

    def at(self, i: int, d: int) -> RatFn:
        return self.coeffs[i][d]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FixedPointSeries)
            and (self.n, self.u_order) == (other.n, other.u_order)
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.coeffs for c in row)

    def copy(self) -> "FixedPointSeries":
        return FixedPointSeries(self.n, self.u_order, [list(r) for r in self.coeffs])

    def map(self, fn) -> "FixedPointSeries":
        return FixedPointSeries(
            self.n,
            self.u_order,
            [
                [fn(i, d, c) for d, c in enumerate(row)]
                for i, row in enumerate(self.coeffs)
            ],
        )

    def add(self, other: "FixedPointSeries") -> "FixedPointSeries":
        return self.map(lambda i, d, c: c + other.coeffs[i][d])

    def sub(self, other: "FixedPointSeries") -> "FixedPointSeries":
        return self.map(lambda i, d, c: c - other.coeffs[i][d])

    def conv_scalar(self, s: TruncatedSeries) -> "FixedPointSeries":
        """Multiply every fixed-point series by a rational-coefficient u-series."""
        out = FixedPointSeries(self.n, self.u_order)
        for i in range(self.n):
            for d2 in range(min(s.order, self.u_order) + 1):
                c = s[d2]
                if c == 0:
                    continue
                for d1 in range(self.u_order + 1 - d2):
                    src = self.coeffs[i][d1]
                    if not src.is_zero():
                        out.coeffs[i][d1 + d2] = out.coeffs[i][d1 + d2] + src * c
        return out

    def conv_pointwise(self, factors: list[list[RatFn]]) -> "FixedPointSeries":
        """Multiply by a per-point u-series with Q(h) coefficients."""
        out = FixedPointSeries(self.n, self.u_order)
        for i in range(self.n):
            fac = factors[i]
            for d2 in range(min(len(fac) - 1, self.u_order) + 1):
                c = fac[d2]
                if c.is_zero():
                    continue
                for d1 in range(self.u_order + 1 - d2):
                    src = self.coeffs[i][d1]
                    if not src.is_zero():
                        out.coeffs[i][d1 + d2] = out.coeffs[i][d1 + d2] + src * c
        return out

    def substitute_u(self, inner_powers: list[TruncatedSeries]) -> "FixedPointSeries":
        out = FixedPointSeries(self.n, self.u_order)
        for i in range(self.n):
            for d in range(self.u_order + 1):
                src = self.coeffs[i][d]
                if src.is_zero():
                    continue
                pw = inner_powers[d]
                for dd in range(d, self.u_order + 1):
                    c = pw[dd]
                    if c != 0:
                        out.coeffs[i][dd] = out.coeffs[i][dd] + src * c
        return out


def seed_series_fixedpoint(
    spec: AlphaSpec, a: int, u_order: int, kind: str
) -> FixedPointSeries:
    """Fixed-point evaluations of the hypergeometric seed series.

    Kinds match the nilpotent-class builder: "hyperplane" (euler factors
    r = 1..ad, leading weight factor, ladder-unit normalization), "unit"
    (factors r = 0..ad-1, nothing else), "normalized" (hyperplane without
    the leading weight factor).
    """
    if kind not in ("hyperplane", "unit", "normalized"):
        raise EquivariantError(f"unknown seed kind {kind!r}")
    n = spec.n
    out = FixedPointSeries(n, u_order)
    lo, hi_off = (0, -1) if kind == "unit" else (1, 0)
    for i in range(n):
        ai = spec.alpha[i]
        for d in range(u_order + 1):
            num = Poly([ONE])
            for r in range(lo, a * d + 1 + hi_off):
                num = num * Poly([a * ai, Q(r)])
            out.coeffs[i][d] = RatFn(num, q_factor(spec, i, d))
    if kind != "unit":
        out = out.conv_scalar(row_zero_unit(n, a, u_order).recip())
        if kind == "hyperplane":
            out = out.map(lambda i, d, c: c * spec.alpha[i])
    return out


def q_factor(spec: AlphaSpec, i: int, d: int) -> Poly:
    """prod_{r=1..d} prod_k (alpha_i - alpha_k + r h) as a Poly in h."""
    out = Poly([ONE])
    for r in range(1, d + 1):
        for k in range(spec.n):
            out = out * Poly([spec.alpha[i] - spec.alpha[k], Q(r)])
    return out


# ---------------------------------------------------------------------------
# recursion
# ---------------------------------------------------------------------------


def recursion_coeff(spec: AlphaSpec, a: int, i: int, j: int, d: int):
    """Residue coefficient C_i^j(d) of the degree recursion (i, j are 1-based)."""
    if i == j:
        raise EquivariantError("recursion coefficient needs distinct points")
    if d < 1:
        raise EquivariantError("recursion coefficient needs degree >= 1")
    al = spec.alpha
    i0, j0 = i - 1, j - 1
    w = (al[j0] - al[i0]) / d
    num = prod(a * al[i0] + r * w for r in range(0, a * d))
    den = Q(d)
    for r in range(1, d + 1):
        for k in range(spec.n):
            if (r, k) == (d, j0):
                continue
            f = al[i0] - al[k] + r * w
            if f == 0:
                raise ResonantWeights(
                    f"zero denominator in recursion coefficient ({i},{j},{d})"
                )
            den = den * f
    return num / den


@dataclass
class VerifyReport:
    suite: str
    params: dict
    failures: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "PASS" if not self.failures else "FAIL"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "status": self.status,
            "failures": self.failures,
        }


def recursion_remainder(
    Z: FixedPointSeries, spec: AlphaSpec, a: int, i: int, d: int
) -> RatFn:
    """Coefficient minus all its recursion pole terms (i is 1-based)."""
    return Z.coeffs[i - 1][d] - recursion_pole_part(Z, spec, a, i, d)


def check_recursive(
    Z: FixedPointSeries, spec: AlphaSpec, a: int, d_max: int | None = None
) -> VerifyReport:
    """PASS iff every post-subtraction remainder is a Laurent polynomial in h."""
    D = Z.u_order if d_max is None else d_max
    rep = VerifyReport("recursion", {"n": spec.n, "a": a, "d_max": D})
    for i in range(1, spec.n + 1):
        for d in range(D + 1):
            rem = recursion_remainder(Z, spec, a, i, d)
            if not rem.is_laurent():
                poles = [qstr(r) for r in rational_roots(rem.den) if r != 0]
                rep.failures.append(
                    {"i": i, "d": d, "detail": f"non-Laurent remainder, poles {poles}"}
                )
    return rep


# ---------------------------------------------------------------------------
# pairing series and node polynomials
# ---------------------------------------------------------------------------


@dataclass
class PhiSeries:
    """Coefficients [u^d z^m] of the two-series pairing, exact in Q(h)."""

    u_order: int
    z_order: int
    coeffs: list  # [d][m] -> RatFn


def pairing_series(
    Y: FixedPointSeries,
    Z: FixedPointSeries,
    spec: AlphaSpec,
    u_order: int | None = None,
    z_order: int | None = None,
) -> PhiSeries:
    """sum_i w_i e^{a_i z} Y(h, a_i, u e^{hz}) Z(-h, a_i, u), truncated."""
    n = spec.n
    D = min(Y.u_order, Z.u_order) if u_order is None else u_order
    M = (D + 1) * n - 1 if z_order is None else z_order
    zneg = [[Z.coeffs[i][d].subs_neg() for d in range(D + 1)] for i in range(n)]
    coeffs = [[RatFn.zero() for _ in range(M + 1)] for _ in range(D + 1)]
    for i in range(n):
        wi = spec.point_weight[i]
        for d1 in range(D + 1):
            yv = Y.coeffs[i][d1]
            if yv.is_zero():
                continue
            base = Poly([spec.alpha[i], Q(d1)])  # a_i + d1*h
            powers = [Poly([ONE])]
            for _ in range(M):
                powers.append(powers[-1] * base)
            for d2 in range(D + 1 - d1):
                zv = zneg[i][d2]
                if zv.is_zero():
                    continue
                core = yv * zv * wi
                fact = ONE
                for m in range(M + 1):
                    if m:
                        fact = fact * Q(m)
                    coeffs[d1 + d2][m] = coeffs[d1 + d2][m] + core * RatFn(powers[m]) / fact
    return PhiSeries(D, M, coeffs)


@dataclass
class EPolyFamily:
    """Interpolated node polynomials per degree: lists of X-coefficients in Q(h)."""

    n: int
    d_max: int
    polys: list  # [d] -> list[RatFn], X-degree <= (d+1)n - 1

    def coeff(self, d: int, s: int) -> RatFn:
        row = self.polys[d]
        return row[s] if s < len(row) else RatFn.zero()

    def is_polynomial(self, d: int) -> bool:
        return all(c.is_polynomial() for c in self.polys[d])

    def swapped_counterpart(self, d: int) -> list:
        """Coefficients of E_d(-h, X - d*h), for the symmetry identity."""
        out = [RatFn.zero() for _ in range(len(self.polys[d]))]
        shift = Poly([ZERO, Q(-d)])  # -d*h
        for s, c in enumerate(self.polys[d]):
            if c.is_zero():
                continue
            cneg = c.subs_neg()
            # expand (X + shift)^s
            binro = [ONE]
            for t in range(1, s + 1):
                binro.append(binro[-1] * Q(s - t + 1, t))
            pw = Poly([ONE])
            terms = []
            for t in range(s + 1):
                terms.append(pw)  # shift^t
                pw = pw * shift
            for t in range(s + 1):
                out[s - t] = out[s - t] + cneg * RatFn(terms[t]) * binro[t]
        return out


def series_node_numerator(
    S: FixedPointSeries, spec: AlphaSpec, i: int, d: int
) -> RatFn:
    """The numerator part N_{S;d}(h, alpha_i) = Q_d * coefficient."""
    return RatFn(q_factor(spec, i, d)) * S.coeffs[i][d]


def node_poly_family(
    Y: FixedPointSeries, Z: FixedPointSeries, spec: AlphaSpec, d_max: int
) -> EPolyFamily:
    """Interpolate the degree-d node polynomials of the pair (Y, Z).

    At the node X = alpha_i + d'*h the value is
    N_{Y;d'}(h, alpha_i) * N_{Z;d-d'}(-h, alpha_i); the interpolant is the
    unique polynomial of X-degree < (d+1)n through all (d+1)n nodes.
    """
    n = spec.n
    polys = []
    for d in range(d_max + 1):
        nodes = []
        values = []
        for dp in range(d + 1):
            for i in range(n):
                nodes.append(Poly([spec.alpha[i], Q(dp)]))
                ny = series_node_numerator(Y, spec, i, dp)
                nz = series_node_numerator(Z, spec, i, d - dp).subs_neg()
                values.append(ny * nz)
        polys.append(lagrange_interpolate(nodes, values))
    return EPolyFamily(n, d_max, polys)


def _reciprocal_product_series(spec: AlphaSpec, d: int, w_order: int) -> TruncatedSeries:
    """w-series of 1 / prod_{r=0..d} prod_k (1 - (alpha_k + r h) w), Poly coeffs."""
    one = Poly([ONE])
    acc = TruncatedSeries.constant("w", one, w_order)
    for r in range(d + 1):
        for k in range(spec.n):
            factor = TruncatedSeries(
                "w",
                [one, Poly([-spec.alpha[k], Q(-r)])] + [Poly()] * (w_order - 1),
            )
            acc = acc * factor
    return acc.recip()


def check_mpc(
    Y: FixedPointSeries,
    Z: FixedPointSeries,
    spec: AlphaSpec,
    d_max: int,
    mode: str = "interpolation",
) -> VerifyReport:
    """Mutual-polynomiality check in either of two independent modes.

    "interpolation": every node polynomial must have h-polynomial
    coefficients.  "z_expansion": the pairing-series coefficients must be
    h-polynomial, and rebuilding them from the node polynomials through
    the triangular residue system must reproduce them exactly (a hard
    error otherwise, since the two routes are equivalent).
    """
    if mode not in ("interpolation", "z_expansion"):
        raise EquivariantError(f"unknown mpc mode {mode!r}")
    n = spec.n
    rep = VerifyReport("mpc", {"n": n, "d_max": d_max, "mode": mode})
    fam = node_poly_family(Y, Z, spec, d_max)
    if mode == "interpolation":
        for d in range(d_max + 1):
            for s, c in enumerate(fam.polys[d]):
                if not c.is_polynomial():
                    rep.failures.append(
                        {"d": d, "s": s, "detail": "node-poly coefficient not polynomial in h"}
                    )
        return rep
    z_order = (d_max + 1) * n - 1
    phi = pairing_series(Y, Z, spec, d_max, z_order)
    mismatch = []
    for d in range(d_max + 1):
        base = (d + 1) * n - 1
        rec = _reciprocal_product_series(spec, d, z_order)
        fact = ONE
        for q in range(z_order + 1):
            if q:
                fact = fact * Q(q)
            fq = phi.coeffs[d][q] * fact  # q! * [u^d z^q]
            rebuilt = RatFn.zero()
            for s in range(max(0, base - q), base + 1):
                c = fam.coeff(d, s)
                if c.is_zero():
                    continue
                rebuilt = rebuilt + RatFn(rec[q + s - base]) * c
            if rebuilt != fq:
                mismatch.append((d, q))
            if not fq.is_polynomial():
                rep.failures.append(
                    {"d": d, "q": q, "detail": "pairing coefficient not polynomial in h"}
                )
    if mismatch:
        raise EquivariantError(
            f"mpc mode disagreement: residue rebuild differs at {mismatch[:4]}"
        )
    return rep


# ---------------------------------------------------------------------------
# admissible transforms
# ---------------------------------------------------------------------------


def apply_transform(
    kind: str,
    Y: FixedPointSeries,
    Z: FixedPointSeries,
    spec: AlphaSpec,
    f=None,
    g: TruncatedSeries | None = None,
) -> tuple[FixedPointSeries, FixedPointSeries]:
    """One of the five pair transforms preserving recursivity + polynomiality.

    kind: "derivative"   Z -> (x + h d/dt) Z
          "mul_u_poly"   Z -> f(u) Z, f a rational-coefficient polynomial
          "mul_h_poly"   Z -> f(h) Z, f a Poly
          "exp_f_over_h" both -> e^{f(u)/h} * , f(0) = 0
          "mirror"       both -> e^{x g(u)/h} S(h, x, u e^{g(u)}), g(0) = 0
    """
    if kind == "derivative":
        Zp = Z.map(lambda i, d, c: c * RatFn(Poly([spec.alpha[i], Q(d)])))
        return Y, Zp
    if kind == "mul_u_poly":
        padded = (list(f) + [ZERO] * (Z.u_order + 1))[: Z.u_order + 1]
        return Y, Z.conv_scalar(TruncatedSeries("u", padded))
    if kind == "mul_h_poly":
        fr = RatFn(f)
        return Y, Z.map(lambda i, d, c: c * fr)
    if kind == "exp_f_over_h":
        if f[0] != 0:
            raise EquivariantError("exp_f_over_h needs f(0) = 0")
        coeffs = [RatFn(Poly([c]), Poly([ZERO, ONE])) for c in f] + [
            RatFn.zero() for _ in range(Y.u_order + 1 - len(f))
        ]
        es = TruncatedSeries("u", coeffs[: Y.u_order + 1]).exp()
        fac = [es.coeffs for _ in range(spec.n)]
        return Y.conv_pointwise(fac), Z.conv_pointwise(fac)
    if kind == "mirror":
        if g is None or g[0] != 0:
            raise EquivariantError("mirror transform needs g with g(0) = 0")
        u_order = Y.u_order
        inner = TruncatedSeries.gen("u", u_order) * g.retag("u").exp()
        inner_pows = power_table(inner, u_order)
        out = []
        for S in (Y, Z):
            moved = S.substitute_u(inner_pows)
            factors = []
            for i in range(spec.n):
                expo = TruncatedSeries(
                    "u",
                    [
                        RatFn(Poly([spec.alpha[i] * g[d]]), Poly([ZERO, ONE]))
                        for d in range(u_order + 1)
                    ],
                )
                factors.append(expo.exp().coeffs)
            out.append(moved.conv_pointwise(factors))
        return out[0], out[1]
    raise EquivariantError(f"unknown transform kind {kind!r}")


# ---------------------------------------------------------------------------
# equivariant level builder
# ---------------------------------------------------------------------------


def _solve_weight_expansion(
    spec: AlphaSpec, values: list, top_power: int, n_unknowns: int
) -> list:
    """Solve sum_r c_r alpha_i^(top_power - r) = v_i, r = 0..n_unknowns-1.

    Overdetermined for n_unknowns < n; raises on inconsistency.
    """
    rows = [
        [spec.alpha[i] ** (top_power - r) for r in range(n_unknowns)]
        for i in range(spec.n)
    ]
    return solve_exact(rows, values)


def build_levels(
    spec: AlphaSpec,
    a: int,
    u_order: int,
    p_max: int,
    table: LadderTable | None = None,
):
    """Level series -1..p_max at the fixed points, plus the recovery ledger.

    Each rung reads the 1/h slice of the previous level, solves the
    weight-power expansion for the correction series (the constant-power
    term doubles as the next ladder diagonal), applies the conjugated
    derivative, subtracts corrections, and divides by the diagonal.  When
    a ladder table is supplied (a = n), the recovered diagonal data is
    cross-checked against it.
    """
    if p_max > spec.n - 1:
        raise EquivariantError(f"levels exist for p <= n-1 = {spec.n - 1}")
    levels = {
        -1: seed_series_fixedpoint(spec, a, u_order, "unit"),
        0: seed_series_fixedpoint(spec, a, u_order, "hyperplane"),
    }
    ledger: dict[int, dict] = {}
    n = spec.n
    for p in range(1, p_max + 1):
        prev = levels[p - 1]
        c_series: list[list] = [[] for _ in range(p + 1)]  # c_series[r][d]
        for d in range(u_order + 1):
            vals = [prev.coeffs[i][d].inf_coeff(-1) for i in range(n)]
            try:
                sol = _solve_weight_expansion(spec, vals, p + 1, p + 1)
            except (InconsistentSystem, UnderdeterminedSystem) as e:
                raise EquivariantError(
                    f"correction solve failed at rung {p}, degree {d}: {e}"
                )
            for r in range(p + 1):
                c_series[r].append(sol[r])
        if table is not None:
            ref = table.off_diagonal_ratio(p - 1)
            if list(ref.coeffs[: u_order + 1]) != c_series[0]:
                raise EquivariantError(
                    f"recovered rung-{p} data disagrees with the ladder table"
                )
        diag = TruncatedSeries(
            "u",
            [
                (ONE if d == 0 else ZERO) + Q(d) * c_series[0][d]
                for d in range(u_order + 1)
            ],
        )
        work = prev.map(lambda i, d, c: c * RatFn(Poly([spec.alpha[i], Q(d)])))
        for r in range(1, p + 1):
            dt_c = TruncatedSeries(
                "u", [Q(d) * c_series[r][d] for d in range(u_order + 1)]
            )
            if not dt_c.is_zero():
                work = work.sub(levels[p - r].conv_scalar(dt_c))
        levels[p] = work.conv_scalar(diag.recip())
        ledger[p] = {"corrections": {r: c_series[r] for r in range(p + 1)}}
        for i in range(n):
            want = spec.alpha[i] ** (p + 1)
            if levels[p].coeffs[i][0] != RatFn.const(want):
                raise EquivariantError(f"rung {p} level has wrong leading term")
    return levels, ledger


def recover_prefactor(
    level0: FixedPointSeries, spec: AlphaSpec
) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Recover (g, c01) of the mirror transform from the 1/h slice of level 0."""
    u_order = level0.u_order
    g_c, c01_c = [], []
    for d in range(u_order + 1):
        vals = [level0.coeffs[i][d].inf_coeff(-1) for i in range(spec.n)]
        sol = _solve_weight_expansion(spec, vals, 2, 2)
        g_c.append(sol[0])
        c01_c.append(sol[1])
    g = TruncatedSeries("q", g_c)
    c01 = TruncatedSeries("q", c01_c)
    if g[0] != 0 or c01[0] != 0:
        raise EquivariantError("prefactor data has a nonzero constant term")
    return g, c01


def mirror_transform_fixedpoint(
    Z: FixedPointSeries,
    spec: AlphaSpec,
    g: TruncatedSeries,
    c01: TruncatedSeries,
) -> FixedPointSeries:
    """Multiply by e^{-(g alpha_i + c01)/h} per point and re-expand in u."""
    u_order = Z.u_order
    out = Z
    if not (g.is_zero() and c01.is_zero()):
        h = Poly([ZERO, ONE])
        factors = []
        for i in range(spec.n):
            expo = TruncatedSeries(
                "u",
                [
                    RatFn(Poly([-(g[d] * spec.alpha[i] + c01[d])]), h)
                    for d in range(u_order + 1)
                ],
            )
            factors.append(expo.exp().coeffs)
        out = out.conv_pointwise(factors)
    if not g.is_zero():
        phi = revert_exp_map(g.truncate(u_order) if g.order > u_order else g)
        out = out.substitute_u(power_table(phi, u_order))
    return out


def transformed_levels(
    spec: AlphaSpec, a: int, u_order: int, table: LadderTable | None = None
):
    """All level series after the mirror transform, keyed -1..n-1."""
    levels, ledger = build_levels(spec, a, u_order, spec.n - 1, table)
    g, c01 = recover_prefactor(levels[0], spec)
    out = {
        p: mirror_transform_fixedpoint(Z, spec, g, c01) for p, Z in levels.items()
    }
    return out, (g, c01), ledger


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def check_identities(
    names,
    spec: AlphaSpec,
    a: int,
    d_max: int,
    table: LadderTable | None = None,
) -> VerifyReport:
    """Coefficientwise identity suite on the transformed level series."""
    known = {"symmetric_sum", "ztilde_swap", "mod_h_inverse", "z0_relation", "e_symmetry"}
    names = list(names) if names else sorted(known)
    bad = set(names) - known
    if bad:
        raise EquivariantError(f"unknown identities: {sorted(bad)}")
    n = spec.n
    rep = VerifyReport("identities", {"n": n, "a": a, "d_max": d_max, "names": names})
    zp, (g, c01), _ = transformed_levels(spec, a, d_max, table)
    if "symmetric_sum" in names:
        for i in range(n):
            for d in range(d_max + 1):
                acc = RatFn.zero()
                for r in range(n + 1):
                    term = zp[n - 1 - r].coeffs[i][d] * spec.sigma[r]
                    acc = acc + (term if r % 2 == 0 else -term)
                if not acc.is_zero():
                    rep.failures.append(
                        {"i": i + 1, "d": d, "detail": "symmetric level sum not zero"}
                    )
    if "mod_h_inverse" in names:
        for p in range(-1, n):
            for i in range(n):
                for d in range(d_max + 1):
                    pp = zp[p].coeffs[i][d].poly_part()
                    want = Poly([spec.alpha[i] ** (p + 1)]) if d == 0 else Poly()
                    if pp != want:
                        rep.failures.append(
                            {
                                "i": i + 1,
                                "d": d,
                                "detail": f"level {p} polynomial part wrong",
                            }
                        )
    if "z0_relation" in names:
        norm = seed_series_fixedpoint(spec, a, d_max, "normalized")
        zhat = mirror_transform_fixedpoint(norm, spec, g, c01)
        for i in range(n):
            for d in range(d_max + 1):
                if zp[0].coeffs[i][d] != zhat.coeffs[i][d] * spec.alpha[i]:
                    rep.failures.append(
                        {"i": i + 1, "d": d, "detail": "level 0 != weight * one-point"}
                    )
    if "ztilde_swap" in names:
        for i in range(n):
            for j in range(n):
                for d in range(d_max + 1):
                    sij = _pair_sum_bivar(zp, spec, i, j, d)
                    sji = _pair_sum_bivar(zp, spec, j, i, d)
                    if sij != sji.swapped():
                        rep.failures.append(
                            {"i": i + 1, "j": j + 1, "d": d, "detail": "swap symmetry fails"}
                        )
    if "e_symmetry" in names:
        Y = seed_series_fixedpoint(spec, a, d_max, "normalized")
        Z = seed_series_fixedpoint(spec, a, d_max, "unit")
        fam_yz = node_poly_family(Y, Z, spec, d_max)
        fam_zy = node_poly_family(Z, Y, spec, d_max)
        for d in range(d_max + 1):
            lhs = fam_zy.polys[d]
            rhs = fam_yz.swapped_counterpart(d)
            L = max(len(lhs), len(rhs))
            for s in range(L):
                lc = lhs[s] if s < len(lhs) else RatFn.zero()
                rc = rhs[s] if s < len(rhs) else RatFn.zero()
                if lc != rc:
                    rep.failures.append(
                        {"d": d, "s": s, "detail": "node-poly symmetry fails"}
                    )
                    break
    return rep


def _pair_sum_bivar(zp: dict, spec: AlphaSpec, i: int, j: int, d: int) -> BivRat:
    """sum over p+q+r = n-1 of (-1)^r sigma_r Z_p(h1, a_i) Z_{q-1}(h2, a_j), degree d."""
    n = spec.n
    acc = BivRat.zero()
    for r in range(n):
        s = spec.sigma[r] if r % 2 == 0 else -spec.sigma[r]
        if s == 0:
            continue
        for p in range(n - r):
            q = n - 1 - r - p
            for d1 in range(d + 1):
                f1 = zp[p].coeffs[i][d1]
                if f1.is_zero():
                    continue
                f2 = zp[q - 1].coeffs[j][d - d1]
                if f2.is_zero():
                    continue
                acc = acc + BivRat.product(f1, f2).scale(s)
    return acc


def two_point_assembled(
    zp: dict, spec: AlphaSpec, a: int, i: int, j: int, d: int
) -> BivRat:
    """Degree-d two-point coefficient at the fixed-point pair, d >= 1 exact."""
    if d < 1:
        raise EquivariantError("assembled two-point values exist for d >= 1 only")
    s = _pair_sum_bivar(zp, spec, i, j, d).scale(Q(a))
    return _divide_h1_plus_h2_bivrat(s)


def _divide_h1_plus_h2_bivrat(b: BivRat) -> BivRat:
    """Exact division of a separable-denominator function by (h1 + h2)."""
    if b.is_zero():
        return b
    # numerator poly in (h1, h2): synthetic division along h2
    hi2 = max(j for _, j in b.num)
    rows: list[dict[int, object]] = [dict() for _ in range(hi2 + 1)]
    for (e1, e2), v in b.num.items():
        rows[e2][e1] = v
    quot: list[dict[int, object]] = [dict() for _ in range(hi2)]
    for jj in range(hi2, 0, -1):
        q = rows[jj]
        quot[jj - 1] = q
        tgt = rows[jj - 1]
        for e1, v in q.items():
            if v != 0:
                tgt[e1 + 1] = tgt.get(e1 + 1, ZERO) - v
    if any(v != 0 for v in rows[0].values()):
        raise EquivariantError("two-point numerator not divisible by h1 + h2")
    num = {}
    for jj, row in enumerate(quot):
        for e1, v in row.items():
            if v != 0:
                num[(e1, jj)] = v
    return BivRat(num, b.d1, b.d2)


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------


def mod_h_seed(Z: FixedPointSeries) -> dict:
    """The h-polynomial part of every coefficient, keyed by (i, d), 1-based i."""
    out = {}
    for i in range(Z.n):
        for d in range(Z.u_order + 1):
            pp = Z.coeffs[i][d].poly_part()
            if not pp.is_zero():
                out[(i + 1, d)] = pp
    return out


def reconstruct(
    Y: FixedPointSeries,
    spec: AlphaSpec,
    a: int,
    seed: dict,
    d_max: int,
    n_bound=None,
) -> FixedPointSeries:
    """Rebuild the unique recursive, mutually-polynomial series from its seed.

    seed maps (i, d) with 1-based i to the prescribed h-polynomial part.
    Degree by degree, the candidate coefficient is (recursion pole terms
    from lower degrees) + seed + an unknown 1/h tail of length n_bound(d);
    the tail is pinned by requiring the degree-d node polynomial of the
    pair (candidate, Y) to have h-polynomial coefficients, which is a
    square-free exact linear solve.
    """
    n = spec.n
    if n_bound is None:
        n_bound = lambda d: d + n + 2
    for i in range(n):
        c0 = Y.coeffs[i][0]
        if c0.is_zero():
            raise ReconstructionError("companion series needs nonzero leading terms")
    u_order = min(Y.u_order, d_max)
    cand = FixedPointSeries(n, u_order)
    h = Poly([ZERO, ONE])
    ny0_neg = [Y.coeffs[i][0].subs_neg() for i in range(n)]
    for d in range(u_order + 1):
        known = []
        for i in range(n):
            base = recursion_pole_part(cand, spec, a, i + 1, d)
            sd = seed.get((i + 1, d))
            if sd is not None:
                base = base + RatFn(sd)
            known.append(base)
        nb = n_bound(d)
        unknown_keys = [(i, r) for i in range(n) for r in range(1, nb + 1)]
        nodes = []
        for dp in range(d + 1):
            for i in range(n):
                nodes.append(Poly([spec.alpha[i], Q(dp)]))
        cards = lagrange_cardinals(nodes)
        L = len(nodes)
        # known part of the node polynomial
        e_known = [RatFn.zero() for _ in range(L)]
        # unknown blocks: for point i, V_i[s] multiplies each tail unknown h^-r
        v_block = [[RatFn.zero() for _ in range(L)] for _ in range(n)]
        idx = 0
        for dp in range(d + 1):
            for i in range(n):
                quot, scalar = cards[idx]
                if dp < d:
                    nz = RatFn(q_factor(spec, i, dp)) * cand.coeffs[i][dp]
                    val = nz * (
                        RatFn(q_factor(spec, i, d - dp)) * Y.coeffs[i][d - dp]
                    ).subs_neg()
                else:
                    qd = RatFn(q_factor(spec, i, d))
                    val = qd * known[i] * ny0_neg[i]
                    vu = qd * ny0_neg[i] / RatFn(scalar)
                    for s in range(L):
                        if not quot[s].is_zero():
                            v_block[i][s] = v_block[i][s] + vu * RatFn(quot[s])
                if not val.is_zero():
                    w = val / RatFn(scalar)
                    for s in range(L):
                        if not quot[s].is_zero():
                            e_known[s] = e_known[s] + w * RatFn(quot[s])
                idx += 1
        rows = []
        rhs = []
        for s in range(L):
            terms = {}
            den = e_known[s].den
            for i in range(n):
                if v_block[i][s].is_zero():
                    continue
                for r in range(1, nb + 1):
                    b = v_block[i][s] * RatFn(Poly([ONE]), h**r)
                    terms[(i, r)] = b
                    g = poly_gcd(den, b.den)
                    den = den * (b.den // g)
            if den.degree == 0:
                continue
            acked = e_known[s].num * (den // e_known[s].den)
            rem_known = acked % den
            rem_terms = {key: (b.num * (den // b.den)) % den for key, b in terms.items()}
            for t in range(den.degree):
                row = [rem_terms[key][t] if key in rem_terms else ZERO for key in unknown_keys]
                if any(x != 0 for x in row) or rem_known[t] != 0:
                    rows.append(row)
                    rhs.append(-rem_known[t])
        if unknown_keys:
            try:
                sol = solve_exact(rows, rhs) if rows else None
            except (InconsistentSystem, UnderdeterminedSystem) as e:
                raise ReconstructionError(
                    f"reconstruction solve failed at degree {d}: {e}"
                )
            if sol is None:
                raise ReconstructionError(
                    f"no polynomiality constraints at degree {d}; tail underdetermined"
                )
            for (i, r), u in zip(unknown_keys, sol):
                if u != 0:
                    known[i] = known[i] + RatFn(Poly([u]), h**r)
        for i in range(n):
            cand.coeffs[i][d] = known[i]
    return cand


def recursion_pole_part(
    Z: FixedPointSeries, spec: AlphaSpec, a: int, i: int, d: int
) -> RatFn:
    """Sum of recursion pole terms at degree d from strictly lower degrees."""
    i0 = i - 1
    acc = RatFn.zero()
    al = spec.alpha
    for d0 in range(1, d + 1):
        for j0 in range(spec.n):
            if j0 == i0:
                continue
            w = (al[j0] - al[i0]) / d0
            c = recursion_coeff(spec, a, i, j0 + 1, d0)
            if c == 0:
                continue
            val = Z.coeffs[j0][d - d0].eval(w)
            if val != 0:
                acc = acc + RatFn(Poly([c * val]), Poly([-w, ONE]))
    return acc

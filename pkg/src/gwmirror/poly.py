"""Dense univariate polynomials over Q and the rational-function field Q(h).

Poly stores coefficients lowest degree first with no trailing zeros; the
zero polynomial is the empty list.  RatFn keeps gcd-reduced fractions with
a monic denominator, so equality is plain structural comparison and
"is this a polynomial / Laurent polynomial in h" is decided by looking at
the reduced denominator, never numerically.
"""
from __future__ import annotations

from .scalars import ONE, Q, ZERO, qstr


class Poly:
    """Univariate polynomial with exact rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [x if not isinstance(x, int) else Q(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @staticmethod
    def const(x) -> "Poly":
        return Poly([x])

    @staticmethod
    def x(power: int = 1) -> "Poly":
        return Poly([ZERO] * power + [ONE])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    def __getitem__(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else ZERO

    def __eq__(self, other) -> bool:
        other = _as_poly(other)
        return other is not None and self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self.c])

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return Poly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return Poly([self[k] - other[k] for k in range(n)])

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not self.c or not other.c:
            return Poly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r, b = Poly([ONE]), self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq, dd = len(rem) - 1, other.degree
        lead = other.c[-1]
        if dq < dd:
            return Poly(), Poly(rem)
        quot = [ZERO] * (dq - dd + 1)
        for k in range(dq - dd, -1, -1):
            coef = rem[dd + k] / lead
            quot[k] = coef
            if coef != 0:
                for j in range(dd + 1):
                    rem[k + j] -= coef * other.c[j]
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return Poly([ZERO] * k + self.c)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.c[-1]
        return self if lead == 1 else Poly([x / lead for x in self.c])

    def eval(self, x):
        r = ZERO
        for a in reversed(self.c):
            r = r * x + a
        return r

    def eval_poly(self, p: "Poly") -> "Poly":
        r = Poly()
        for a in reversed(self.c):
            r = r * p + Poly([a])
        return r

    def subs_neg(self) -> "Poly":
        """Substitute x -> -x."""
        return Poly([-a if k & 1 else a for k, a in enumerate(self.c)])

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            elif k == 1:
                terms.append(f"{a}*x")
            else:
                terms.append(f"{a}*x^{k}")
        return " + ".join(terms)


def _as_poly(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, int):
        return Poly([Q(v)])
    if hasattr(v, "denominator") and hasattr(v, "numerator"):
        return Poly([v])
    return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def rational_roots(p: Poly) -> list:
    """All rational roots of p, found by the rational-root theorem.

    Used for reporting pole locations of reduced denominators; the
    polynomial degrees involved are small.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots = []
    # factor out x^m first
    m = 0
    while p[m] == 0:
        m += 1
    if m:
        roots.append(ZERO)
        p = Poly(p.c[m:])
    if p.degree == 0:
        return roots
    # clear denominators to get an integer polynomial
    den_lcm = 1
    for a in p.c:
        d = a.denominator
        den_lcm = den_lcm * d // _gcd_int(den_lcm, d)
    ints = [int(a * den_lcm) for a in p.c]
    lead, low = ints[-1], ints[0]
    for num in _divisors(abs(low)):
        for den in _divisors(abs(lead)):
            for cand in (Q(num, den), Q(-num, den)):
                if p.eval(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    out, k = [], 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
        k += 1
    return sorted(out)


class RatFn:
    """Element of the field Q(h): a reduced ratio of two Polys, monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        if den is None:
            den = Poly([ONE])
        else:
            den = _as_poly(den) if not isinstance(den, Poly) else den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([ONE])
            return
        if not _reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.c[-1]
        if lead != 1:
            num = Poly([x / lead for x in num.c])
            den = Poly([x / lead for x in den.c])
        self.num, self.den = num, den

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(x) -> "RatFn":
        return RatFn(Poly([x]))

    @staticmethod
    def h(power: int = 1) -> "RatFn":
        return RatFn(Poly.x(power))

    @staticmethod
    def zero() -> "RatFn":
        return RatFn(Poly())

    @staticmethod
    def one() -> "RatFn":
        return RatFn(Poly([ONE]))

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_laurent(self) -> bool:
        """True iff the reduced denominator is a power of h."""
        return all(x == 0 for x in self.den.c[:-1])

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        p = _as_poly(other)
        return None if p is None else RatFn(p)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        return other is not None and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num.c), tuple(self.den.c)))

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFn.zero()
        # cross-reduce before multiplying to keep degrees small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num // g1 if g1.degree > 0 else self.num
        d2 = other.den // g1 if g1.degree > 0 else other.den
        n2 = other.num // g2 if g2.degree > 0 else other.num
        d1 = self.den // g2 if g2.degree > 0 else self.den
        return RatFn(n1 * n2, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFn(other.den, other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> "RatFn":
        if k < 0:
            return RatFn(self.den, self.num) ** (-k)
        return RatFn(self.num**k, self.den**k, _reduced=True)

    # -- structure -----------------------------------------------------
    def eval(self, x):
        d = self.den.eval(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at {qstr(x)}")
        return self.num.eval(x) / d

    def subs_neg(self) -> "RatFn":
        """Substitute h -> -h."""
        return RatFn(self.num.subs_neg(), self.den.subs_neg())

    def poly_part(self) -> Poly:
        """Polynomial part of the expansion at h = infinity (the quotient)."""
        return self.num // self.den

    def inf_coeffs(self, lowest: int) -> dict[int, object]:
        """Coefficients of the expansion at h = infinity down to h^lowest.

        Returns {exponent: coefficient} for all exponents >= lowest that can
        be nonzero; the expansion is h^(deg num - deg den) * (1 + O(1/h)).
        """
        out: dict[int, object] = {}
        if self.is_zero():
            return out
        quot, rem = divmod(self.num, self.den)
        for k, a in enumerate(quot.c):
            if a != 0:
                out[k] = a
        if rem.is_zero():
            return out
        # rem/den = sum_{j>=1} c_j h^{-j}; expand via reversed coefficients
        m, M = rem.degree, self.den.degree
        top = m - M  # leading exponent of the tail, <= -1
        count = top - lowest + 1
        if count <= 0:
            return out
        rrev = list(reversed(rem.c))
        drev = list(reversed(self.den.c))
        # series division rrev(z)/drev(z) with z = 1/h; drev[0] = lead(den) != 0
        cs: list = []
        for j in range(count):
            s = rrev[j] if j < len(rrev) else ZERO
            for t in range(1, min(j, len(drev) - 1) + 1):
                s -= drev[t] * cs[j - t]
            cs.append(s / drev[0])
        for j, cj in enumerate(cs):
            if cj != 0:
                out[top - j] = cj
        return out

    def inf_coeff(self, k: int):
        """Single coefficient of h^k in the expansion at infinity."""
        return self.inf_coeffs(min(k, 0)).get(k, ZERO)

    def __repr__(self) -> str:
        if self.den.is_one():
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"

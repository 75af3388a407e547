import math
import random

import pytest

from gwmirror.scalars import ONE, Q, ZERO
from gwmirror.series import (
    SeriesError,
    TruncatedSeries,
    power_table,
    revert_exp_map,
)


def S(var, *coeffs):
    return TruncatedSeries(var, [Q(c) for c in coeffs])


def test_recip_geometric():
    s = S("q", 1, 1, 0, 0)  # 1 + q at order 3
    assert s.recip() == S("q", 1, -1, 1, -1)


def test_exp_log_round_trip():
    s = S("q", 1, 1, 0, 0, 0)
    assert s.log().exp() == s
    t = S("q", 0, 2, -3, 5, 1)
    assert t.exp().log() == t


def test_mul_recip_of_factorial_ratio_series():
    # I0-type unit for n = 5: sum (5d)!/(d!)^5 q^d, times its inverse, to order 3
    coeffs = [Q(math.factorial(5 * d), math.factorial(d) ** 5) for d in range(4)]
    s = TruncatedSeries("q", coeffs)
    assert s * s.recip() == S("q", 1, 0, 0, 0)


def test_order_propagation_and_tags():
    a = S("q", 1, 2, 3)
    b = S("q", 1, 1)
    assert (a * b).order == 1
    assert (a + b).order == 1
    with pytest.raises(SeriesError):
        a + S("u", 1, 1, 1)


def test_preconditions():
    with pytest.raises(SeriesError):
        S("q", 0, 1).recip()
    with pytest.raises(SeriesError):
        S("q", 1, 1).exp()
    with pytest.raises(SeriesError):
        S("q", 2, 1).log()


def test_dcoeff():
    s = S("w", 1, 2, 1)  # 2nd coefficient of 1/(1-w) pattern check
    assert s.dcoeff(0) == 1 and s.dcoeff(1) == 2
    geo = S("w", 1, 1, 1, 1)
    assert geo.dcoeff(2) == 1
    with pytest.raises(SeriesError):
        geo.dcoeff(5)


def _revert_oracle(g: TruncatedSeries) -> TruncatedSeries:
    """Independent reversion of q -> q e^{g(q)} by undetermined coefficients.

    Solves for phi term by term: the u^m coefficient of phi*e^{g(phi)} - u
    is linear in phi_m with unit coefficient once phi_1..phi_{m-1} are known.
    """
    n = g.order
    gu = g.retag("u")
    coeffs = [ZERO, ONE] + [ZERO] * (n - 1)
    for m in range(2, n + 1):
        phi = TruncatedSeries("u", coeffs)
        err = phi * gu.compose(phi).exp()
        coeffs[m] = coeffs[m] - err[m]
    return TruncatedSeries("u", coeffs)


def test_revert_trivial():
    g = S("q", 0, 0, 0, 0)
    assert revert_exp_map(g) == S("u", 0, 1, 0, 0)


def test_revert_linear_exponent():
    # g = c q gives phi = u - c u^2 + (3c^2/2) u^3 + ...
    c = Q(2)
    g = TruncatedSeries("q", [ZERO, c, ZERO, ZERO])
    phi = revert_exp_map(g)
    assert phi[1] == 1
    assert phi[2] == -c
    assert phi[3] == 3 * c * c / 2
    assert phi == _revert_oracle(g)


def test_revert_random_round_trip():
    rng = random.Random(5)
    for _ in range(10):
        order = rng.randint(2, 6)
        coeffs = [ZERO] + [Q(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(order)]
        g = TruncatedSeries("q", coeffs)
        phi = revert_exp_map(g)  # raises internally if the round trip fails
        assert phi[0] == 0 and phi[1] == 1
        assert phi == _revert_oracle(g)


def test_compose_and_power_table():
    f = S("q", 0, 1, 1)  # q + q^2
    pows = power_table(f, 2)
    assert pows[0] == S("q", 1, 0, 0)
    assert pows[2] == S("q", 0, 0, 1)
    g = S("q", 1, 2, 3)
    assert g.compose(f) == S("q", 1, 2, 5)

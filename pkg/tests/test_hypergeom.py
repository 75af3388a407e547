import math

import pytest

from gwmirror.hypergeom import (
    LadderError,
    apply_ladder,
    build_ladder,
    build_seed_series,
    mirror_map,
)
from gwmirror.laurent import LaurentWindow
from gwmirror.poly import Poly
from gwmirror.scalars import ONE, Q, ZERO
from gwmirror.series import TruncatedSeries
from gwmirror.tseries import TPolySeries


def harmonic(a, b):
    return sum((Q(1, r) for r in range(a, b + 1)), Q(0))


def test_row_zero_quintic_numbers():
    # weight-zero row for n = a = 5: unit entry has coefficients (5d)!/(d!)^5
    t = build_ladder(5, 5, 1, 2)
    unit = t.entry(0, 0)
    assert unit[0] == Poly([ONE])
    assert unit[1] == Poly([Q(120)])
    assert unit[2] == Poly([Q(113400)])
    assert math.factorial(10) // 32 == 113400


def test_row_one_quintic_number():
    # entry (0,1) minus t * entry (0,0) has q^1 coefficient 120 * 5*(1/2+...+1/5)
    t = build_ladder(5, 5, 1, 1)
    e01, e00 = t.entry(0, 1), t.entry(0, 0)
    diff = e01[1] - Poly([ZERO, ONE]) * e00[1]
    assert diff == Poly([Q(120) * 5 * harmonic(2, 5)])
    assert Q(120) * 5 * harmonic(2, 5) == Q(770)


def test_fano_index_two_table_is_trivial():
    # n - a >= 2: unit entry is 1 and the next entry is exactly t
    t = build_ladder(7, 5, 2, 3)
    assert t.entry(0, 0) == TPolySeries([ONE, ZERO, ZERO, ZERO], tcap=2)
    expect_t = TPolySeries([Poly([ZERO, ONE]), Poly(), Poly(), Poly()], tcap=2)
    assert t.entry(0, 1) == expect_t
    assert mirror_map(t).g.is_zero()


def test_diagonal_entries_are_units():
    t = build_ladder(5, 5, 4, 4)
    for p in range(5):
        diag = t.diagonal(p)  # raises if t-dependent or constant term != 1
        assert diag[0] == 1


def test_mirror_map_quintic_first_coefficient():
    t = build_ladder(5, 5, 1, 3)
    g = mirror_map(t).g
    assert g[0] == 0
    assert g[1] == Q(770)


def test_bad_parameters():
    with pytest.raises(LadderError):
        build_ladder(5, 6, 1, 1)
    with pytest.raises(LadderError):
        build_ladder(5, 5, -1, 1)


def test_seed_series_constant_terms():
    y = build_seed_series(5, 5, 2, "hyperplane")
    assert y.window(0, 1) == LaurentWindow.monomial(ONE, 0)
    assert all(y.window(0, k).is_zero() for k in (0, 2, 3, 4))
    ym = build_seed_series(5, 5, 2, "unit")
    assert ym.window(0, 0) == LaurentWindow.monomial(ONE, 0)
    yn = build_seed_series(5, 5, 2, "normalized")
    assert yn.window(0, 0) == LaurentWindow.monomial(ONE, 0)


def test_unit_seed_degree_one_window_n2():
    # n = a = 2: the u^1 coefficient of the unit-kind series is 2x/h
    ym = build_seed_series(2, 2, 1, "unit")
    assert ym.window(1, 0).is_zero()
    assert ym.window(1, 1) == LaurentWindow.monomial(Q(2), -1)


def test_hyperplane_seed_is_x_times_normalized():
    y = build_seed_series(4, 4, 3, "hyperplane")
    yn = build_seed_series(4, 4, 3, "normalized")
    assert y == yn.mul_x()


def test_apply_ladder_identity_and_first_step():
    t = build_ladder(5, 5, 2, 2)
    y = build_seed_series(5, 5, 2, "hyperplane")
    assert apply_ladder(0, t, y) == y
    y1 = apply_ladder(1, t, y)
    # u^0 coefficient: x * x = x^2 (derivative kills constants, diagonal(1)(0)=1)
    assert y1.window(0, 2) == LaurentWindow.monomial(ONE, 0)
    assert y1.window(0, 1).is_zero()
    with pytest.raises(LadderError):
        apply_ladder(3, t, y)


def test_conjugated_expansion_matches_ladder_ratios():
    # the x^{q+1} h^{-q} slice of the hyperplane seed series, corrected by
    # the e^{xt/h} conjugation, reproduces entry(0,q)/entry(0,0) for q <= 3
    n = 5
    t = build_ladder(n, n, 3, 3)
    y = build_seed_series(n, n, 3, "hyperplane")
    i00_inv = t.diagonal(0).recip()
    for q in range(4):
        ratio = t.entry(0, q).mul_scalar_series(i00_inv)  # t-polynomial series
        # sum_m (-t)^m/m! * ratio_{q-m} must be t-free and equal the slice
        acc = TPolySeries([Poly() for _ in range(4)], tcap=3)
        sign_t = TPolySeries([Poly([ZERO, -ONE])] + [Poly()] * 3, tcap=3)  # -t
        power = TPolySeries([Poly([ONE])] + [Poly()] * 3, tcap=3)
        fact = 1
        for m in range(q + 1):
            if m:
                power = power * sign_t
                fact *= m
            rat_m = t.entry(0, q - m).mul_scalar_series(i00_inv)
            term = power * rat_m
            acc = acc + TPolySeries(
                [p * Q(1, fact) for p in term.coeffs], tcap=acc.tcap
            )
        flat = acc.to_scalar_series()  # raises if residual t-dependence
        for d in range(4):
            assert y.window(d, q + 1).get(-q) == flat[d]

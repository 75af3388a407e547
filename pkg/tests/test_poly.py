import random

from gwmirror.poly import Poly, RatFn, poly_gcd, rational_roots
from gwmirror.scalars import Q


def P(*coeffs):
    return Poly([Q(c) for c in coeffs])


def test_poly_basic_arith():
    p = P(1, 2)  # 1 + 2x
    q = P(0, 0, 3)  # 3x^2
    assert (p + q).c == [Q(1), Q(2), Q(3)]
    assert (p * q).c == [Q(0), Q(0), Q(3), Q(6)]
    assert (p - p).is_zero()
    assert P(0, 0).is_zero()
    assert p.degree == 1 and Poly().degree == -1


def test_poly_divmod_and_gcd():
    a = P(-1, 0, 1)  # x^2 - 1
    b = P(1, 1)  # x + 1
    q, r = divmod(a, b)
    assert r.is_zero() and q == P(-1, 1)
    assert poly_gcd(a, b) == P(1, 1)
    assert poly_gcd(P(2, 2), P(4)) == P(1)


def test_poly_ring_axioms_random():
    rng = random.Random(7)

    def rand_poly():
        return Poly([Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(0, 5))])

    for _ in range(60):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_divmod_reconstruction_random():
    rng = random.Random(11)
    for _ in range(40):
        a = Poly([Q(rng.randint(-5, 5)) for _ in range(rng.randint(0, 6))])
        b = Poly([Q(rng.randint(-5, 5)) for _ in range(rng.randint(1, 4))])
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_ratfn_normalization():
    f = RatFn(P(0, 2), P(0, 0, 4))  # 2x / 4x^2 = 1/(2x) -> monic den x, num 1/2
    assert f.num == P(Q(1, 2)) and f.den == P(0, 1)
    assert RatFn(P(0), P(1, 5)).is_zero()
    assert RatFn(P(1), P(2)) == RatFn(P(1), P(2))


def test_ratfn_field_axioms_random():
    rng = random.Random(3)

    def rand_rf():
        num = Poly([Q(rng.randint(-3, 3)) for _ in range(rng.randint(0, 4))])
        den = Poly()
        while den.is_zero():
            den = Poly([Q(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))])
        return RatFn(num, den)

    for _ in range(40):
        a, b, c = rand_rf(), rand_rf(), rand_rf()
        assert (a + b) * c == a * c + b * c
        assert (a - a).is_zero()
        if not b.is_zero():
            assert (a / b) * b == a


def test_ratfn_polynomial_and_laurent_predicates():
    h = RatFn.h()
    f = h * h + 1
    assert f.is_polynomial() and f.is_laurent()
    g = RatFn(P(1), P(0, 0, 0, 1))  # 1/h^3
    assert not g.is_polynomial() and g.is_laurent()
    w = RatFn(P(1), P(-2, 1))  # 1/(h-2)
    assert not w.is_polynomial() and not w.is_laurent()


def test_ratfn_infinity_expansion():
    # (h^2+1)/(h-2) = h + 2 + 5/h + 10/h^2 + ...
    f = RatFn(P(1, 0, 1), P(-2, 1))
    assert f.poly_part() == P(2, 1)
    cs = f.inf_coeffs(-2)
    assert cs[1] == Q(1) and cs[0] == Q(2)
    assert cs[-1] == Q(5) and cs[-2] == Q(10)
    assert f.inf_coeff(-1) == Q(5)
    # pure tail
    g = RatFn(P(1), P(0, 1))  # 1/h
    assert g.poly_part().is_zero()
    assert g.inf_coeff(-1) == Q(1)


def test_ratfn_subs_neg_and_eval():
    f = RatFn(P(0, 1), P(1, 1))  # h/(1+h)
    g = f.subs_neg()  # -h/(1-h) -> monic: h/(h-1)
    assert g == RatFn(P(0, 1), P(-1, 1))
    assert f.eval(Q(1)) == Q(1, 2)


def test_rational_roots():
    # roots 0, 2/3, -1
    p = P(0, 1) * P(-2, 3) * P(1, 1)
    rs = rational_roots(p)
    assert set(rs) == {Q(0), Q(2, 3), Q(-1)}

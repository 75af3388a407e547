"""Exact Lagrange interpolation over the field Q(h).

Nodes are degree-<=1 polynomials in h (points that move linearly with h);
the interpolated object is the unique polynomial in a second variable of
degree < #nodes whose value at every node matches, with all divisions done
exactly in Q(h).
"""
from __future__ import annotations

from .poly import Poly, RatFn
from .scalars import ONE


class InterpolationError(ValueError):
    pass


_CARDINAL_CACHE: dict = {}


def lagrange_cardinals(nodes: list[Poly]) -> list[tuple[list[Poly], Poly]]:
    """For each node m: the numerator coefficients of prod_{m'!=m}(X - node_m')
    and the scalar prod_{m'!=m}(node_m - node_m'), both exact in Q[h].

    The cardinal polynomial at m is numerator / scalar.
    """
    key = tuple(tuple(nd.c) for nd in nodes)
    hit = _CARDINAL_CACHE.get(key)
    if hit is not None:
        return hit
    L = len(nodes)
    # master polynomial prod (X - node_m), coefficients are Poly in h
    master: list[Poly] = [Poly([ONE])]
    for nd in nodes:
        nxt = [Poly() for _ in range(len(master) + 1)]
        for s, c in enumerate(master):
            nxt[s + 1] = nxt[s + 1] + c
            nxt[s] = nxt[s] - c * nd
        master = nxt
    out = []
    for m, nd in enumerate(nodes):
        # synthetic division of master by (X - node_m)
        quot = [Poly() for _ in range(L)]
        carry = master[L]
        for s in range(L - 1, -1, -1):
            quot[s] = carry
            carry = master[s] + carry * nd
        if not carry.is_zero():
            raise InterpolationError("master polynomial not divisible by its factor")
        scalar = Poly([ONE])
        for m2, nd2 in enumerate(nodes):
            if m2 != m:
                diff = nd - nd2
                if diff.is_zero():
                    raise InterpolationError(f"repeated interpolation nodes {m} and {m2}")
                scalar = scalar * diff
        out.append((quot, scalar))
    if len(_CARDINAL_CACHE) > 64:
        _CARDINAL_CACHE.clear()
    _CARDINAL_CACHE[key] = out
    return out


def lagrange_interpolate(nodes: list[Poly], values: list[RatFn]) -> list[RatFn]:
    """Coefficients (low to high) of the unique interpolating polynomial.

    Degree is at most len(nodes) - 1; evaluating the result at every node
    reproduces the corresponding value exactly.
    """
    if len(nodes) != len(values):
        raise InterpolationError("node/value length mismatch")
    cards = lagrange_cardinals(nodes)
    L = len(nodes)
    out = [RatFn.zero() for _ in range(L)]
    for (quot, scalar), val in zip(cards, values):
        if val.is_zero():
            continue
        w = val / RatFn(scalar)
        for s in range(L):
            if not quot[s].is_zero():
                out[s] = out[s] + w * RatFn(quot[s])
    while out and out[-1].is_zero():
        out.pop()
    return out


def eval_poly_coeffs(coeffs: list[RatFn], node: Poly) -> RatFn:
    """Evaluate sum coeffs[s] * X^s at X = node (a Poly in h)."""
    r = RatFn.zero()
    for c in reversed(coeffs):
        r = r * RatFn(node) + c
    return r

"""Brute-force references, deliberately independent of the library code paths."""

from fractions import Fraction
from math import inf, lcm


def bigint_vp(n, p):
    if n == 0:
        return inf
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def w(k, p):
    return (1 + 2 * p) ** k - 1


def weight_difference_valuation(k0, k, p):
    """v_p(w_k0 - w_k) from the integers themselves."""
    return bigint_vp(w(k0, p) - w(k, p), p)


def ghost_coefficient_valuation(zeros, k0, p):
    """v_p of prod (w_k0 - w_k)^m, by multiplying out the big integer."""
    prod = 1
    for k, m in zeros:
        prod *= (w(k0, p) - w(k, p)) ** m
    return bigint_vp(prod, p)


def gift_wrap_lower_hull(points):
    """Lower hull by repeatedly taking the minimal-slope point (farthest on ties).

    ``points`` is a list of (index, valuation) with rational or infinite
    valuations; infinite ones are skipped.  Valuations are scaled by a common
    denominator so every comparison is integer cross-multiplication.
    Returns (vertices, slope runs).
    """
    pts = sorted((i, Fraction(v)) for i, v in points if v != inf)
    den = lcm(*(v.denominator for _, v in pts)) if pts else 1
    ipts = [(i, int(v * den)) for i, v in pts]
    hull = [ipts[0]]
    cur = 0
    while cur < len(ipts) - 1:
        x0, y0 = ipts[cur]
        best = cur + 1
        for j in range(cur + 1, len(ipts)):
            xb, yb = ipts[best]
            xj, yj = ipts[j]
            # slope_j < slope_best  <=>  (yj - y0)(xb - x0) < (yb - y0)(xj - x0)
            lhs = (yj - y0) * (xb - x0)
            rhs = (yb - y0) * (xj - x0)
            if lhs < rhs or (lhs == rhs and xj > xb):
                best = j
        hull.append(ipts[best])
        cur = best
    vertices = [(i, Fraction(y, den)) for i, y in hull]
    runs = []
    for (xa, ya), (xb, yb) in zip(vertices, vertices[1:]):
        runs.append(((yb - ya) / (xb - xa), xb - xa))
    return vertices, runs

"""Shared test fixtures: independent oracles and the regime-spanning grid.

The bisection root finder is the independent check for every value that
the library obtains in closed form; it never calls into the solver under
test.  ``sharpness_points`` enumerates (class, interval) pairs covering
every regime of every dispatched bound, used both by the extremal tests
and the acceptance gate.
"""

import math
from math import inf, sqrt

import pytest

from tailbounds import DistributionClass, IntervalSpec

SQRT3 = sqrt(3.0)
C = DistributionClass


def bisect_root(f, lo, hi, tol=1e-12, max_iter=200):
    """Plain bisection; requires a sign change on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    assert flo * fhi <= 0.0, f"no sign change on [{lo}, {hi}]"
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or (hi - lo) < tol:
            return mid
        if flo * fmid <= 0.0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _span(lo, hi, n):
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def sharpness_points():
    """(class, interval) pairs spanning every regime of every theorem."""
    pts = []

    def add(cls, u, v):
        pts.append((cls, IntervalSpec(u=u, v=v)))

    # one-sided, class all (cantelli)
    for v in _span(0.3, 8.0, 10):
        add(C.ALL, inf, v)
    # class all, two-sided: trivial, mid, cap regimes
    for v in _span(0.2, 0.9, 8):
        add(C.ALL, 0.9 / v, v)                      # u v < 1
    for v in _span(0.6, 4.0, 10):
        add(C.ALL, v + 1.0 / v, v)                  # strictly inside the mid strip
        add(C.ALL, v, v)                            # u = v (Bienayme-Chebyshev) when v >= 1
    for v in _span(0.5, 4.0, 8):
        add(C.ALL, v + 2.0 / v + 1.0, v)            # cap
    # symmetric one-sided: below and above the w-clamp
    for v in _span(0.3, 4.0, 10):
        add(C.SYMMETRIC, inf, v)
    # symmetric two-sided: the four cases
    for t in _span(0.3, 0.95, 6):
        add(C.SYMMETRIC, t + 0.04, t)               # case 1: v <= u <= 1
    for v in _span(0.9, 4.0, 6):
        add(C.SYMMETRIC, max(1.0, 1.2 * v), v)      # case 2: u <= sqrt2 v, u >= 1
    for v in _span(0.2, 1.0, 6):
        add(C.SYMMETRIC, 1.5 * v + 1.2, v)          # case 3
    for v in _span(1.0, 4.0, 6):
        add(C.SYMMETRIC, 1.5 * v, v)                # case 4
    # concave half line: linear piece and cap
    for v in _span(0.1, 2.0 / SQRT3, 6):
        add(C.CONCAVE_HALF_LINE, inf, v)
    for v in _span(2.0 / SQRT3, 6.0, 6):
        add(C.CONCAVE_HALF_LINE, inf, v)
    # unimodal one-sided
    for v in _span(0.2, sqrt(5.0 / 3.0), 8):
        add(C.UNIMODAL, inf, v)
    for v in _span(sqrt(5.0 / 3.0), 8.0, 8):
        add(C.UNIMODAL, inf, v)
    # unimodal two-sided: narrow strip below sqrt3, mid, cap
    for v in _span(sqrt(5.0 / 3.0) + 0.01, SQRT3 - 0.01, 8):
        # the proved strip narrows to a point as v drops to sqrt(5/3)
        lo_u = max(v, (11.0 * v - 4.0 * sqrt(6.0 * v * v - 10.0)) / 5.0)
        add(C.UNIMODAL, 0.5 * (lo_u + v + 2.0 / v), v)
    for v in _span(SQRT3, 5.0, 10):
        add(C.UNIMODAL, v + 1.5 / v, v)
        add(C.UNIMODAL, v, v)
    for v in _span(SQRT3, 5.0, 6):
        add(C.UNIMODAL, v + 2.0 / v + 0.8, v)
    # mode = mean, one-sided (no upper range restriction)
    for v in _span(0.15, 6.0, 12):
        add(C.UNIMODAL_MODE_EQ_MEAN, inf, v)
    # mode = mean, two-sided: both orderings, no swap
    for v in _span(SQRT3, 4.0, 6):
        add(C.UNIMODAL_MODE_EQ_MEAN, min(v + 1.5 / v, v + 2.0 / v), v)
        add(C.UNIMODAL_MODE_EQ_MEAN, v, min(v + 1.5 / v, v + 2.0 / v))
        add(C.UNIMODAL_MODE_EQ_MEAN, v, v)
    # symmetric unimodal one-sided
    for v in _span(0.2, 2.0 / SQRT3, 6):
        add(C.SYMMETRIC_UNIMODAL, inf, v)
    for v in _span(2.0 / SQRT3, 6.0, 6):
        add(C.SYMMETRIC_UNIMODAL, inf, v)
    # symmetric unimodal two-sided: near-square and cap regimes
    for v in _span(SQRT3, 4.0, 6):
        add(C.SYMMETRIC_UNIMODAL, min(1.7, 2.0 * sqrt(2.0) - 1.0) * v, v)
        add(C.SYMMETRIC_UNIMODAL, (2.0 * sqrt(2.0) - 1.0) * v + 1.0, v)
    # swapped inputs (v > u) exercise the reflection path
    add(C.ALL, 1.0, 2.0)
    add(C.ALL, 0.5, 4.0)
    add(C.SYMMETRIC, 1.0, 3.0)
    add(C.SYMMETRIC, 0.5, 0.8)
    add(C.UNIMODAL, 2.0, 2.5)
    add(C.UNIMODAL, SQRT3, 2.4)
    add(C.SYMMETRIC_UNIMODAL, 2.0, 3.0)
    add(C.SYMMETRIC_UNIMODAL, 1.8, 5.0)
    return pts


@pytest.fixture(scope="session")
def all_sharpness_points():
    return sharpness_points()

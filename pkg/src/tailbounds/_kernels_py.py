"""Pure-python (numpy) grid-search kernels.

Fallback for the compiled extension.  Every expression here mirrors the
compiled code operation for operation, in the same enumeration order, so
both backends return bit-identical (value, index) pairs: elementwise
IEEE arithmetic is deterministic and ``argmax`` picks the first maximum
exactly like the sequential strict-greater scan in C.

Scans evaluate a tail functional over families of discrete
distributions whose masses are pinned by moment constraints:

* ``pair_scan``     two atoms with given mean and second moment; one atom
                    location free, the partner and both masses implied.
* ``triple_scan``   three free atom locations; masses from the 3x3
                    moment system (quadrature weights); infeasible cells
                    (negative mass) are skipped.
* ``sym_pair_scan`` two symmetric atom pairs plus an optional atom at 0,
                    unit variance; per cell the best of the three vertex
                    mass allocations.
* ``sym_arm_scan``  one symmetric pair plus an atom at 0, second moment
                    3 (symmetric mixing distribution of a unimodal law).
* ``recip_scan``    two atoms with given mean and variance, maximizing
                    E[1/max(Y, 1)].

The functional is either the closed-tail indicator (psi=False) or the
conditional tail weight of a uniform segment from the mode (psi=True):
for Z = M + U*y, P(Z <= -u or Z >= v | y) equals 1 - neg/y below
neg = -(u+M) and 1 - pos/y above pos = v - M, and 0 between.
"""

import math

import numpy as np

NEG_INF = -math.inf


def _contrib(y, neg, pos, psi):
    if psi:
        with np.errstate(divide="ignore", invalid="ignore"):
            left = 1.0 - neg / y
            right = 1.0 - pos / y
        return np.where(y < neg, left, np.where(y > pos, right, 0.0))
    return np.where((y <= neg) | (y >= pos), 1.0, 0.0)


def pair_scan(t_grid, mu, m2, neg, pos, psi):
    t = np.asarray(t_grid, dtype=np.float64)
    s2 = m2 - mu * mu
    d = t - mu
    with np.errstate(divide="ignore", invalid="ignore"):
        s = mu - s2 / d
        p = s2 / (s2 + d * d)
        val = (1.0 - p) * _contrib(s, neg, pos, psi) + p * _contrib(t, neg, pos, psi)
    # t at the mean implies a point mass that misses the second moment.
    bad = (d == 0.0) & (s2 != 0.0)
    val = np.where(np.isfinite(val) & ~bad, val, NEG_INF)
    i = int(np.argmax(val))
    best = float(val[i])
    if best == NEG_INF:
        return NEG_INF, -1
    return best, i


def triple_scan(y1_grid, y2_grid, y3_grid, mu, m2, neg, pos, psi):
    y1 = np.asarray(y1_grid, dtype=np.float64)
    y2 = np.asarray(y2_grid, dtype=np.float64)
    y3 = np.asarray(y3_grid, dtype=np.float64)
    n2, n3 = y2.size, y3.size
    f1 = _contrib(y1, neg, pos, psi)
    f2 = _contrib(y2, neg, pos, psi)[:, None]
    f3 = _contrib(y3, neg, pos, psi)[None, :]
    b = y2[:, None]
    c = y3[None, :]
    sum_bc = b + c
    prod_bc = b * c
    best = NEG_INF
    best_idx = -1
    for i1, a in enumerate(y1):
        with np.errstate(divide="ignore", invalid="ignore"):
            p1 = (m2 - mu * sum_bc + prod_bc) / ((a - b) * (a - c))
            p2 = (m2 - mu * (a + c) + a * c) / ((b - a) * (b - c))
            p3 = (m2 - mu * (a + b) + a * b) / ((c - a) * (c - b))
            val = p1 * f1[i1] + p2 * f2 + p3 * f3
        ok = (p1 >= 0.0) & (p2 >= 0.0) & (p3 >= 0.0) & np.isfinite(val)
        val = np.where(ok, val, NEG_INF)
        j = int(np.argmax(val))
        if val.flat[j] > best:
            best = float(val.flat[j])
            best_idx = (i1 * n2 + j // n3) * n3 + j % n3
    return best, best_idx


def sym_pair_scan(s_grid, t_grid, u, v):
    s = np.asarray(s_grid, dtype=np.float64)[:, None]
    t = np.asarray(t_grid, dtype=np.float64)[None, :]
    w_s = (s >= v).astype(np.float64) + (s >= u)
    w_t = (t >= v).astype(np.float64) + (t >= u)
    with np.errstate(divide="ignore", invalid="ignore"):
        val0 = np.where((s >= 1.0) & (s > 0.0), w_s * (0.5 / (s * s)), NEG_INF)
        val1 = np.where((t >= 1.0) & (t > 0.0), w_t * (0.5 / (t * t)), NEG_INF)
        diff = t * t - s * s
        p = (t * t - 1.0) / (2.0 * diff)
        q = (1.0 - s * s) / (2.0 * diff)
        cand2 = p * w_s + q * w_t
        # NaN candidates are ignored like in the compiled scan; +inf ones
        # win the cell and get discarded whole by the final finiteness mask.
        cand2 = np.where(np.isnan(cand2), NEG_INF, cand2)
        val2 = np.where((s > 0.0) & (s <= 1.0) & (t >= 1.0) & (s < t), cand2, NEG_INF)
    val0 = np.broadcast_to(val0, val2.shape)
    val1 = np.broadcast_to(val1, val2.shape)
    val = np.maximum(np.maximum(val0, val1), val2)
    val = np.where(np.isfinite(val), val, NEG_INF)
    j = int(np.argmax(val))
    best = float(val.flat[j])
    if best == NEG_INF:
        return NEG_INF, -1, -1
    # Smallest allocation id among those achieving the cell maximum.
    if val0.flat[j] == best:
        alloc = 0
    elif val1.flat[j] == best:
        alloc = 1
    else:
        alloc = 2
    return best, j, alloc


def sym_arm_scan(t_grid, u, v):
    t = np.asarray(t_grid, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        m = 1.5 / (t * t)
        val = m * (_contrib(t, -u, v, True) + _contrib(-t, -u, v, True))
    ok = (t >= math.sqrt(3.0)) & np.isfinite(val)
    val = np.where(ok, val, NEG_INF)
    i = int(np.argmax(val))
    best = float(val[i])
    if best == NEG_INF:
        return NEG_INF, -1
    return best, i


def recip_scan(a_grid, mu, var):
    a = np.asarray(a_grid, dtype=np.float64)
    e = mu - a
    with np.errstate(divide="ignore", invalid="ignore"):
        bq = mu + var / e
        pa = var / (var + e * e)
        fa = np.where(a > 1.0, 1.0 / a, 1.0)
        fb = np.where(bq > 1.0, 1.0 / bq, 1.0)
        val = pa * fa + (1.0 - pa) * fb
    ok = (e > 0.0) & np.isfinite(val)
    val = np.where(ok, val, NEG_INF)
    i = int(np.argmax(val))
    best = float(val[i])
    if best == NEG_INF:
        return NEG_INF, -1
    return best, i

# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled grid-search kernels.

Operation-for-operation mirror of ``_kernels_py``; see that module for
the family definitions.  Plain sequential loops: determinism of the
(value, index) result is part of the contract, so no parallel reduction.
"""

from libc.math cimport INFINITY, isfinite, sqrt


cdef inline double _contrib(double y, double neg, double pos, bint psi) noexcept nogil:
    if psi:
        if y < neg:
            return 1.0 - neg / y
        if y > pos:
            return 1.0 - pos / y
        return 0.0
    if y <= neg or y >= pos:
        return 1.0
    return 0.0


def pair_scan(double[::1] t_grid, double mu, double m2, double neg, double pos, bint psi):
    cdef double s2 = m2 - mu * mu
    cdef double best = -INFINITY
    cdef Py_ssize_t best_idx = -1
    cdef Py_ssize_t i
    cdef double t, d, s, p, val
    with nogil:
        for i in range(t_grid.shape[0]):
            t = t_grid[i]
            d = t - mu
            if d == 0.0 and s2 != 0.0:
                continue
            s = mu - s2 / d
            p = s2 / (s2 + d * d)
            val = (1.0 - p) * _contrib(s, neg, pos, psi) + p * _contrib(t, neg, pos, psi)
            if isfinite(val) and val > best:
                best = val
                best_idx = i
    if best_idx < 0:
        return -INFINITY, -1
    return best, best_idx


def triple_scan(double[::1] y1_grid, double[::1] y2_grid, double[::1] y3_grid,
                double mu, double m2, double neg, double pos, bint psi):
    cdef Py_ssize_t n1 = y1_grid.shape[0]
    cdef Py_ssize_t n2 = y2_grid.shape[0]
    cdef Py_ssize_t n3 = y3_grid.shape[0]
    cdef double best = -INFINITY
    cdef Py_ssize_t best_idx = -1
    cdef Py_ssize_t i1, i2, i3
    cdef double a, b, c, f1, f2, f3, p1, p2, p3, val
    with nogil:
        for i1 in range(n1):
            a = y1_grid[i1]
            f1 = _contrib(a, neg, pos, psi)
            for i2 in range(n2):
                b = y2_grid[i2]
                f2 = _contrib(b, neg, pos, psi)
                for i3 in range(n3):
                    c = y3_grid[i3]
                    f3 = _contrib(c, neg, pos, psi)
                    p1 = (m2 - mu * (b + c) + b * c) / ((a - b) * (a - c))
                    p2 = (m2 - mu * (a + c) + a * c) / ((b - a) * (b - c))
                    p3 = (m2 - mu * (a + b) + a * b) / ((c - a) * (c - b))
                    val = p1 * f1 + p2 * f2 + p3 * f3
                    if p1 >= 0.0 and p2 >= 0.0 and p3 >= 0.0 and isfinite(val) and val > best:
                        best = val
                        best_idx = (i1 * n2 + i2) * n3 + i3
    if best_idx < 0:
        return -INFINITY, -1
    return best, best_idx


def sym_pair_scan(double[::1] s_grid, double[::1] t_grid, double u, double v):
    cdef Py_ssize_t ns = s_grid.shape[0]
    cdef Py_ssize_t nt = t_grid.shape[0]
    cdef double best = -INFINITY
    cdef Py_ssize_t best_idx = -1
    cdef int best_alloc = -1
    cdef Py_ssize_t i, j
    cdef int alloc
    cdef double s, t, w_s, w_t, diff, p, q, cell, cand
    with nogil:
        for i in range(ns):
            s = s_grid[i]
            w_s = (1.0 if s >= v else 0.0) + (1.0 if s >= u else 0.0)
            for j in range(nt):
                t = t_grid[j]
                w_t = (1.0 if t >= v else 0.0) + (1.0 if t >= u else 0.0)
                cell = -INFINITY
                alloc = -1
                if s >= 1.0 and s > 0.0:
                    cand = w_s * (0.5 / (s * s))
                    if cand > cell:
                        cell = cand
                        alloc = 0
                if t >= 1.0 and t > 0.0:
                    cand = w_t * (0.5 / (t * t))
                    if cand > cell:
                        cell = cand
                        alloc = 1
                if s > 0.0 and s <= 1.0 and t >= 1.0 and s < t:
                    diff = t * t - s * s
                    p = (t * t - 1.0) / (2.0 * diff)
                    q = (1.0 - s * s) / (2.0 * diff)
                    cand = p * w_s + q * w_t
                    if cand > cell:
                        cell = cand
                        alloc = 2
                if alloc >= 0 and isfinite(cell) and cell > best:
                    best = cell
                    best_idx = i * nt + j
                    best_alloc = alloc
    if best_idx < 0:
        return -INFINITY, -1, -1
    return best, best_idx, best_alloc


def sym_arm_scan(double[::1] t_grid, double u, double v):
    cdef double best = -INFINITY
    cdef Py_ssize_t best_idx = -1
    cdef Py_ssize_t i
    cdef double t, m, val
    cdef double root3 = sqrt(3.0)
    with nogil:
        for i in range(t_grid.shape[0]):
            t = t_grid[i]
            if t < root3:
                continue
            m = 1.5 / (t * t)
            val = m * (_contrib(t, -u, v, True) + _contrib(-t, -u, v, True))
            if isfinite(val) and val > best:
                best = val
                best_idx = i
    if best_idx < 0:
        return -INFINITY, -1
    return best, best_idx


def recip_scan(double[::1] a_grid, double mu, double var):
    cdef double best = -INFINITY
    cdef Py_ssize_t best_idx = -1
    cdef Py_ssize_t i
    cdef double a, e, bq, pa, fa, fb, val
    with nogil:
        for i in range(a_grid.shape[0]):
            a = a_grid[i]
            e = mu - a
            if e <= 0.0:
                continue
            bq = mu + var / e
            pa = var / (var + e * e)
            fa = 1.0 / a if a > 1.0 else 1.0
            fb = 1.0 / bq if bq > 1.0 else 1.0
            val = pa * fa + (1.0 - pa) * fb
            if isfinite(val) and val > best:
                best = val
                best_idx = i
    if best_idx < 0:
        return -INFINITY, -1
    return best, best_idx

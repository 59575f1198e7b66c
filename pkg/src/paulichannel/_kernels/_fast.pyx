# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the numerically hot kernels.

Same four functions and semantics as :mod:`paulichannel._kernels.pure`;
arithmetic is written with the identical operation order so both backends
agree bit for bit (the build pins -ffp-contract=off for the same reason).
"""

from libc.math cimport INFINITY, exp, lgamma, log

import numpy as np


def separable_error_sum(w1, w2, w3, double p1, double p2, double p3):
    """Exact expected quadratic error of the separable estimator.

    ``w1, w2, w3`` are the per-axis binomial pmfs over counts 0..m; the
    sum runs over all (m+1)**3 count triples.
    """
    cdef double[::1] v1 = np.ascontiguousarray(w1, dtype=np.float64)
    cdef double[::1] v2 = np.ascontiguousarray(w2, dtype=np.float64)
    cdef double[::1] v3 = np.ascontiguousarray(w3, dtype=np.float64)
    cdef Py_ssize_t m = v1.shape[0] - 1
    cdef Py_ssize_t i1, i2, i3
    cdef double inv2m = 1.0 / (2.0 * m)
    cdef double total = 0.0
    cdef double w12, e1, e2, e3, cost
    for i1 in range(m + 1):
        for i2 in range(m + 1):
            w12 = v1[i1] * v2[i2]
            for i3 in range(m + 1):
                e1 = (i3 - i1 + i2) * inv2m
                e2 = (i1 - i2 + i3) * inv2m
                e3 = (i2 - i3 + i1) * inv2m
                cost = (p1 - e1) ** 2 + (p2 - e2) ** 2 + (p3 - e3) ** 2
                total += w12 * v3[i3] * cost
    return total


def entangled_error_sum(double p1, double p2, double p3, Py_ssize_t n):
    """Exact expected quadratic error of the Bell-outcome estimator.

    Multinomial enumeration over all compositions i1+i2+i3+i4 = n, with
    log-space weights and the 0**0 = 1 convention for zero-probability
    outcomes.
    """
    cdef double q4 = 1.0 - p1 - p2 - p3
    if q4 < 0.0:
        q4 = 0.0
    cdef double lp1 = log(p1) if p1 > 0.0 else 0.0
    cdef double lp2 = log(p2) if p2 > 0.0 else 0.0
    cdef double lp3 = log(p3) if p3 > 0.0 else 0.0
    cdef double lq4 = log(q4) if q4 > 0.0 else 0.0
    cdef double[::1] lf = np.array(
        [lgamma(k + 1.0) for k in range(n + 1)], dtype=np.float64
    )
    cdef Py_ssize_t i1, i2, i3, i4
    cdef double inv_n = 1.0 / n
    cdef double total = 0.0
    cdef double logw, cost
    for i1 in range(n + 1):
        if i1 > 0 and p1 == 0.0:
            break
        for i2 in range(n - i1 + 1):
            if i2 > 0 and p2 == 0.0:
                break
            for i3 in range(n - i1 - i2 + 1):
                if i3 > 0 and p3 == 0.0:
                    break
                i4 = n - i1 - i2 - i3
                if i4 > 0 and q4 == 0.0:
                    continue
                logw = (lf[n] - lf[i1] - lf[i2] - lf[i3] - lf[i4]
                        + i1 * lp1 + i2 * lp2 + i3 * lp3 + i4 * lq4)
                cost = ((p1 - i1 * inv_n) ** 2
                        + (p2 - i2 * inv_n) ** 2
                        + (p3 - i3 * inv_n) ** 2)
                total += exp(logw) * cost
    return total


def grid_search_full(double lin, double cross, t):
    """Exhaustive maximization of the scaled advantage over the simplex lattice.

    Lattice points are p_i = t[j_i] with j1 + j2 + j3 <= len(t) - 1; the
    objective is 0.5 * (lin * (1-s) * s + cross * e2). Visits points in
    lexicographic index order, replacing the incumbent only on strictly
    larger values. Returns (j1, j2, j3, value).
    """
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t g = tv.shape[0] - 1
    cdef Py_ssize_t j1, j2, j3
    cdef Py_ssize_t b1 = 0, b2 = 0, b3 = 0
    cdef double best_val = -INFINITY
    cdef double t1, t2, t3, u, q, s, e2, obj
    for j1 in range(g + 1):
        t1 = tv[j1]
        for j2 in range(g - j1 + 1):
            t2 = tv[j2]
            u = t1 + t2
            q = t1 * t2
            for j3 in range(g - j1 - j2 + 1):
                t3 = tv[j3]
                s = u + t3
                e2 = q + u * t3
                obj = 0.5 * (lin * ((1.0 - s) * s) + cross * e2)
                if obj > best_val:
                    best_val = obj
                    b1 = j1
                    b2 = j2
                    b3 = j3
    return b1, b2, b3, best_val


def grid_search_slice(double lin, double cross, t, double p2, Py_ssize_t limit):
    """Exhaustive maximization on the fixed-p2 slice of the lattice.

    Lattice points satisfy j1 + j3 <= limit with the middle parameter
    pinned to ``p2``. Returns (j1, j3, value) with lexicographic
    tie-breaking.
    """
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t g = tv.shape[0] - 1
    cdef Py_ssize_t lim = limit if limit < g else g
    cdef Py_ssize_t j1, j3
    cdef Py_ssize_t b1 = 0, b3 = 0
    cdef double best_val = -INFINITY
    cdef double t1, t3, u, q, s, e2, obj
    for j1 in range(lim + 1):
        t1 = tv[j1]
        u = t1 + p2
        q = t1 * p2
        for j3 in range(lim - j1 + 1):
            t3 = tv[j3]
            s = u + t3
            e2 = q + u * t3
            obj = 0.5 * (lin * ((1.0 - s) * s) + cross * e2)
            if obj > best_val:
                best_val = obj
                b1 = j1
                b3 = j3
    return b1, b3, best_val

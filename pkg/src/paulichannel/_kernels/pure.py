"""NumPy implementations of the numerically hot kernels.

Always-available fallback backend. The compiled extension
(:mod:`paulichannel._kernels._fast`) provides the same four functions with
identical semantics and argument conventions; see the package __init__ for
backend selection. Arithmetic expressions are written with the same
operation order as the compiled code so both backends produce identical
floating-point results point by point.
"""

from __future__ import annotations

import math

import numpy as np


def separable_error_sum(w1, w2, w3, p1: float, p2: float, p3: float) -> float:
    """Exact expected quadratic error of the separable estimator.

    Sums the estimator's squared deviation from (p1, p2, p3) over all
    (m+1)**3 count triples, weighted by the product of the three binomial
    pmfs ``w1, w2, w3`` (each of length m+1).
    """
    m = len(w1) - 1
    idx = np.arange(m + 1, dtype=np.float64)
    i1 = idx[:, None, None]
    i2 = idx[None, :, None]
    i3 = idx[None, None, :]
    inv2m = 1.0 / (2.0 * m)
    e1 = (i3 - i1 + i2) * inv2m
    e2 = (i1 - i2 + i3) * inv2m
    e3 = (i2 - i3 + i1) * inv2m
    cost = (p1 - e1) ** 2 + (p2 - e2) ** 2 + (p3 - e3) ** 2
    weight = (
        np.asarray(w1, dtype=np.float64)[:, None, None]
        * np.asarray(w2, dtype=np.float64)[None, :, None]
        * np.asarray(w3, dtype=np.float64)[None, None, :]
    )
    return float(np.sum(weight * cost))


def entangled_error_sum(p1: float, p2: float, p3: float, n: int) -> float:
    """Exact expected quadratic error of the Bell-outcome estimator.

    Sums over all compositions i1+i2+i3+i4 = n with multinomial weights
    over (p1, p2, p3, 1-p1-p2-p3). Weights are evaluated in log space;
    outcomes with probability zero contribute only through zero counts
    (the 0**0 = 1 convention).
    """
    q4 = max(0.0, 1.0 - p1 - p2 - p3)
    probs = (p1, p2, p3, q4)
    lf = _log_factorials(n)
    i1, i2, i3 = np.indices((n + 1, n + 1, n + 1))
    keep = (i1 + i2 + i3) <= n
    i1, i2, i3 = i1[keep], i2[keep], i3[keep]
    i4 = n - i1 - i2 - i3
    logw = lf[n] - lf[i1] - lf[i2] - lf[i3] - lf[i4]
    valid = np.ones(i1.shape, dtype=bool)
    for counts, q in zip((i1, i2, i3, i4), probs):
        if q == 0.0:
            valid &= counts == 0
        else:
            logw = logw + counts * math.log(q)
    weight = np.where(valid, np.exp(logw), 0.0)
    inv_n = 1.0 / n
    cost = (
        (p1 - i1 * inv_n) ** 2
        + (p2 - i2 * inv_n) ** 2
        + (p3 - i3 * inv_n) ** 2
    )
    return float(np.sum(weight * cost))


def grid_search_full(lin: float, cross: float, t) -> tuple[int, int, int, float]:
    """Exhaustive maximization of the scaled advantage over the simplex lattice.

    The lattice is p_i = t[j_i] for j1 + j2 + j3 <= len(t) - 1 and the
    objective is 0.5 * (lin * (1-s) * s + cross * e2) with s the parameter
    sum and e2 the sum of pairwise products. Points are visited in
    lexicographic index order and only strictly larger values replace the
    incumbent, so ties resolve to the lexicographically smallest argmax.

    Returns (j1, j2, j3, value).
    """
    t = np.asarray(t, dtype=np.float64)
    g = len(t) - 1
    best_val = -math.inf
    best = (0, 0, 0)
    for j1 in range(g + 1):
        t1 = t[j1]
        r = g - j1
        # Flatten the triangle {(j2, j3): j2 + j3 <= r} in lexicographic order.
        counts = np.arange(r + 1, 0, -1)
        j2f = np.repeat(np.arange(r + 1), counts)
        starts = np.cumsum(counts) - counts
        j3f = np.arange(counts.sum()) - np.repeat(starts, counts)
        t2 = t[j2f]
        t3 = t[j3f]
        u = t1 + t2
        q = t1 * t2
        s = u + t3
        e2 = q + u * t3
        obj = 0.5 * (lin * ((1.0 - s) * s) + cross * e2)
        k = int(np.argmax(obj))
        value = float(obj[k])
        if value > best_val:
            best_val = value
            best = (j1, int(j2f[k]), int(j3f[k]))
    return best[0], best[1], best[2], best_val


def grid_search_slice(
    lin: float, cross: float, t, p2: float, limit: int
) -> tuple[int, int, float]:
    """Exhaustive maximization on the fixed-p2 slice of the lattice.

    Same objective as :func:`grid_search_full` with the middle parameter
    pinned to ``p2``; lattice points satisfy j1 + j3 <= limit. Returns
    (j1, j3, value) with lexicographic tie-breaking.
    """
    t = np.asarray(t, dtype=np.float64)
    g = len(t) - 1
    lim = min(limit, g)
    best_val = -math.inf
    best = (0, 0)
    for j1 in range(lim + 1):
        t1 = t[j1]
        u = t1 + p2
        q = t1 * p2
        t3 = t[: lim - j1 + 1]
        s = u + t3
        e2 = q + u * t3
        obj = 0.5 * (lin * ((1.0 - s) * s) + cross * e2)
        k = int(np.argmax(obj))
        value = float(obj[k])
        if value > best_val:
            best_val = value
            best = (j1, k)
    return best[0], best[1], best_val


def _log_factorials(n: int) -> np.ndarray:
    """log(k!) for k = 0..n via the log-gamma function."""
    return np.array([math.lgamma(k + 1.0) for k in range(n + 1)])

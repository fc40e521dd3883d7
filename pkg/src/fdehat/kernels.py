"""Numeric inner loops, each in two interchangeable implementations.

Every kernel ships as an explicit-loop version compiled by numba and a
vectorised numpy version. The module-level names (``fill_ghf``, ``fill_mhf``,
``eval_expansions``, ``node_values``) are bound to one or the other at import
time according to :data:`fdehat._accel.USE_NUMBA`. Both are always importable
under their suffixed names so the test-suite and benchmark can compare them.

Conventions: grids have ``n`` subintervals and ``n + 1`` nodes; a *quadratic*
flag selects the modified (piecewise-quadratic) hat family, otherwise the
generalised (piecewise-linear) one.
"""

import numpy as np

from ._accel import USE_NUMBA, njit


# --------------------------------------------------------------------------
# operational-matrix fill from precomputed coefficient sequences
# --------------------------------------------------------------------------

@njit
def fill_ghf_loops(zeta, rho, scale):
    # zeta[j] for j = 1..n (zeta[0] unused); rho[d] for d = 1..n-1
    n = zeta.shape[0] - 1
    out = np.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        out[0, j] = scale * zeta[j]
    for i in range(1, n + 1):
        out[i, i] = scale
        for j in range(i + 1, n + 1):
            out[i, j] = scale * rho[j - i]
    return out


def fill_ghf_numpy(zeta, rho, scale):
    n = zeta.shape[0] - 1
    out = np.zeros((n + 1, n + 1))
    out[0, 1:] = scale * zeta[1:]
    if n >= 1:
        band = np.concatenate(([1.0], rho[1:n]))
        i, j = np.triu_indices(n, k=0)
        out[i + 1, j + 1] = scale * band[j - i]
    return out


@njit
def fill_mhf_loops(beta, eta, xi, scale):
    # beta[j], j = 1..n; eta[d], d = 0..n-1; xi[d + 1], d = -1..n-2
    n = beta.shape[0] - 1
    out = np.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        out[0, j] = scale * beta[j]
    for i in range(1, n + 1):
        if i % 2 == 1:
            for j in range(i, n + 1):
                out[i, j] = scale * eta[j - i]
        else:
            for j in range(i - 1, n + 1):
                out[i, j] = scale * xi[j - i + 1]
    return out


def fill_mhf_numpy(beta, eta, xi, scale):
    n = beta.shape[0] - 1
    out = np.zeros((n + 1, n + 1))
    out[0, 1:] = scale * beta[1:]
    i = np.arange(n + 1)[:, None]
    j = np.arange(n + 1)[None, :]
    d = j - i
    odd = (i % 2 == 1) & (d >= 0)
    even = (i % 2 == 0) & (i >= 2) & (d >= -1)
    ii, jj = np.nonzero(odd)
    out[ii, jj] = scale * eta[jj - ii]
    ii, jj = np.nonzero(even)
    out[ii, jj] = scale * xi[jj - ii + 1]
    return out


# --------------------------------------------------------------------------
# batch evaluation of hat expansions
# --------------------------------------------------------------------------

_SNAP = 8.0 * np.finfo(np.float64).eps


@njit
def eval_expansions_loops(coeffs, h, quadratic, ts):
    # coeffs: (r, n + 1); ts: (q,) already validated to lie in [0, n h]
    r = coeffs.shape[0]
    n = coeffs.shape[1] - 1
    q = ts.shape[0]
    out = np.empty((r, q))
    for p in range(q):
        s = ts[p] / h
        k = np.floor(s + 0.5)
        if abs(s - k) <= _SNAP * max(1.0, s):
            s = k
        if quadratic:
            c = int(np.floor(s / 2.0))
            if c < 0:
                c = 0
            if c > n // 2 - 1:
                c = n // 2 - 1
            x = s - 2.0 * c
            w0 = 0.5 * (x - 1.0) * (x - 2.0)
            w1 = -x * (x - 2.0)
            w2 = 0.5 * x * (x - 1.0)
            b = 2 * c
            for row in range(r):
                out[row, p] = (w0 * coeffs[row, b] + w1 * coeffs[row, b + 1]
                               + w2 * coeffs[row, b + 2])
        else:
            c = int(np.floor(s))
            if c < 0:
                c = 0
            if c > n - 1:
                c = n - 1
            x = s - c
            for row in range(r):
                out[row, p] = (1.0 - x) * coeffs[row, c] + x * coeffs[row, c + 1]
    return out


def eval_expansions_numpy(coeffs, h, quadratic, ts):
    n = coeffs.shape[1] - 1
    s = ts / h
    k = np.floor(s + 0.5)
    s = np.where(np.abs(s - k) <= _SNAP * np.maximum(1.0, s), k, s)
    if quadratic:
        c = np.clip(np.floor(s / 2.0), 0, n // 2 - 1).astype(np.int64)
        x = s - 2.0 * c
        b = 2 * c
        return (0.5 * (x - 1.0) * (x - 2.0) * coeffs[:, b]
                - x * (x - 2.0) * coeffs[:, b + 1]
                + 0.5 * x * (x - 1.0) * coeffs[:, b + 2])
    c = np.clip(np.floor(s), 0, n - 1).astype(np.int64)
    x = s - c
    return (1.0 - x) * coeffs[:, c] + x * coeffs[:, c + 1]


# --------------------------------------------------------------------------
# reconstruction of node values from derivative coefficients
# --------------------------------------------------------------------------

@njit
def node_values_loops(A, P, y0, quadratic):
    m = A.shape[0]
    n = A.shape[1] - 1
    Y = np.empty((m, n + 1))
    for i in range(m):
        Y[i, 0] = y0[i]
        for j in range(1, n + 1):
            top = j
            if quadratic and j % 2 == 1:
                top = j + 1
            acc = 0.0
            for k in range(top + 1):
                acc += A[i, k] * P[k, j]
            Y[i, j] = acc + y0[i]
    return Y


def node_values_numpy(A, P, y0, quadratic):
    n = A.shape[1] - 1
    Y = np.empty_like(A)
    Y[:, 0] = y0
    # rows past the support bound of each column are exact zeros, so the
    # full product equals the truncated sum
    Y[:, 1:] = A @ P[:, 1:] + y0[:, None]
    return Y


if USE_NUMBA:
    fill_ghf = fill_ghf_loops
    fill_mhf = fill_mhf_loops
    eval_expansions = eval_expansions_loops
    node_values = node_values_loops
else:
    fill_ghf = fill_ghf_numpy
    fill_mhf = fill_mhf_numpy
    eval_expansions = eval_expansions_numpy
    node_values = node_values_numpy

"""Hot numeric kernels with numba and pure-numpy implementations.

Each kernel comes in two flavours, ``*_numba`` and ``*_numpy``, with the
same signature. The public names at the bottom of the module dispatch to
one of them according to :data:`cpred._accel.USE_NUMBA`. Both flavours are
importable regardless of the flag so that tests and benchmarks can compare
them directly.
"""

import numpy as np

from ._accel import HAS_NUMBA, USE_NUMBA, njit, prange

__all__ = [
    "basis_values",
    "row_kronecker",
    "bidiag_project",
]


# ---------------------------------------------------------------------------
# B-spline basis (de Boor recursion restricted to the k active columns)
# ---------------------------------------------------------------------------


def basis_values_numpy(xs, full, order):
    xs = np.asarray(xs, dtype=np.float64)
    full = np.asarray(full, dtype=np.float64)
    k = int(order)
    n = xs.shape[0]
    nbasis = full.shape[0] - k
    out = np.zeros((n, nbasis))
    if n == 0:
        return out

    mu = np.searchsorted(full, xs, side="right") - 1
    np.clip(mu, k - 1, nbasis - 1, out=mu)

    # local[:, t] holds B_{mu-k+1+t}
    local = np.zeros((n, k))
    local[:, k - 1] = 1.0
    for r in range(2, k + 1):
        for t in range(k - r, k):
            j = mu - k + 1 + t
            lo = full[j]
            hi = full[j + r - 1]
            w_left = _ramp_numpy(xs, lo, hi)
            if t + 1 < k:
                lo1 = full[j + 1]
                hi1 = full[j + r]
                w_right = 1.0 - _ramp_numpy(xs, lo1, hi1)
                local[:, t] = w_left * local[:, t] + w_right * local[:, t + 1]
            else:
                local[:, t] = w_left * local[:, t]

    rows = np.arange(n)
    for t in range(k):
        out[rows, mu - k + 1 + t] = local[:, t]
    return out


def _ramp_numpy(x, lo, hi):
    span = hi - lo
    safe = np.where(span > 0.0, span, 1.0)
    w = np.where(x <= lo, 0.0, np.where(x >= hi, 1.0, (x - lo) / safe))
    return w


@njit
def _ramp_scalar(x, lo, hi):
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    return (x - lo) / (hi - lo)


@njit(parallel=True)
def basis_values_numba(xs, full, order):
    k = order
    n = xs.shape[0]
    nbasis = full.shape[0] - k
    out = np.zeros((n, nbasis))
    for i in prange(n):
        x = xs[i]
        mu = np.searchsorted(full, x, side="right") - 1
        if mu < k - 1:
            mu = k - 1
        elif mu > nbasis - 1:
            mu = nbasis - 1
        local = np.zeros(k)
        local[k - 1] = 1.0
        for r in range(2, k + 1):
            for t in range(k - r, k):
                j = mu - k + 1 + t
                acc = _ramp_scalar(x, full[j], full[j + r - 1]) * local[t]
                if t + 1 < k:
                    acc += (1.0 - _ramp_scalar(x, full[j + 1], full[j + r])) * local[t + 1]
                local[t] = acc
        for t in range(k):
            out[i, mu - k + 1 + t] = local[t]
    return out


# ---------------------------------------------------------------------------
# Row-wise Kronecker product (first factor varies fastest)
# ---------------------------------------------------------------------------


def row_kronecker_numpy(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n, p = a.shape
    q = b.shape[1]
    return (b[:, :, None] * a[:, None, :]).reshape(n, q * p)


@njit(parallel=True)
def row_kronecker_numba(a, b):
    n, p = a.shape
    q = b.shape[1]
    out = np.empty((n, q * p))
    for i in prange(n):
        for j2 in range(q):
            bj = b[i, j2]
            base = j2 * p
            for j1 in range(p):
                out[i, base + j1] = a[i, j1] * bj
    return out


# ---------------------------------------------------------------------------
# Least squares against a lower bi-diagonal (m+1) x m matrix via Givens QR
# ---------------------------------------------------------------------------
#
# The matrix has diag[i] at (i, i) and sub[i] at (i+1, i). Y is (m+1, S);
# every column is projected independently. Returns the least-squares
# coefficients (m, S) and the signed residual coordinate (S,) along the
# single direction orthogonal to the column space, whose absolute value is
# the residual norm.


def bidiag_project_numpy(diag, sub, y):
    diag = np.asarray(diag, dtype=np.float64)
    sub = np.asarray(sub, dtype=np.float64)
    work = np.array(y, dtype=np.float64, copy=True)
    m = diag.shape[0]
    r_diag = np.empty(m)
    r_sup = np.empty(max(m - 1, 0))
    a = diag[0]
    for i in range(m):
        r = np.hypot(a, sub[i])
        c = a / r
        s = sub[i] / r
        r_diag[i] = r
        top = work[i].copy()
        work[i] = c * top + s * work[i + 1]
        work[i + 1] = -s * top + c * work[i + 1]
        if i + 1 < m:
            r_sup[i] = s * diag[i + 1]
            a = c * diag[i + 1]

    coef = np.empty((m,) + work.shape[1:])
    coef[m - 1] = work[m - 1] / r_diag[m - 1]
    for i in range(m - 2, -1, -1):
        coef[i] = (work[i] - r_sup[i] * coef[i + 1]) / r_diag[i]
    return coef, work[m].copy()


@njit
def bidiag_project_numba(diag, sub, y):
    m = diag.shape[0]
    ncol = y.shape[1]
    work = y.copy()
    r_diag = np.empty(m)
    r_sup = np.empty(max(m - 1, 0))
    a = diag[0]
    for i in range(m):
        r = np.hypot(a, sub[i])
        c = a / r
        s = sub[i] / r
        r_diag[i] = r
        for col in range(ncol):
            top = work[i, col]
            bot = work[i + 1, col]
            work[i, col] = c * top + s * bot
            work[i + 1, col] = -s * top + c * bot
        if i + 1 < m:
            r_sup[i] = s * diag[i + 1]
            a = c * diag[i + 1]

    coef = np.empty((m, ncol))
    for col in range(ncol):
        coef[m - 1, col] = work[m - 1, col] / r_diag[m - 1]
        for i in range(m - 2, -1, -1):
            coef[i, col] = (work[i, col] - r_sup[i] * coef[i + 1, col]) / r_diag[i]
    return coef, work[m].copy()


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def basis_values(xs, full, order):
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    full = np.ascontiguousarray(full, dtype=np.float64)
    if USE_NUMBA:
        return basis_values_numba(xs, full, int(order))
    return basis_values_numpy(xs, full, order)


def row_kronecker(a, b):
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if USE_NUMBA:
        return row_kronecker_numba(a, b)
    return row_kronecker_numpy(a, b)


def bidiag_project(diag, sub, y):
    """Project columns of ``y`` onto the span of a lower bi-diagonal matrix."""
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    sub = np.ascontiguousarray(sub, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    squeeze = y.ndim == 1
    y2 = np.ascontiguousarray(y.reshape(y.shape[0], -1))
    if USE_NUMBA:
        coef, resid = bidiag_project_numba(diag, sub, y2)
    else:
        coef, resid = bidiag_project_numpy(diag, sub, y2)
    if squeeze:
        return coef[:, 0], resid[0]
    return coef, resid


if not HAS_NUMBA:  # pragma: no cover
    basis_values_numba = basis_values_numpy
    row_kronecker_numba = row_kronecker_numpy
    bidiag_project_numba = bidiag_project_numpy

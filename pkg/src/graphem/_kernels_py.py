"""Pure-NumPy implementations of the hot solver kernels.

These mirror the compiled versions in _speedups.pyx operation-for-operation
(same update order, same convergence measures) so either backend can be used
interchangeably. The compiled backend is preferred at import time; set
GRAPHEM_PURE_PYTHON=1 to force this one.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla


def gmle_sweep(W, S, indptr, indices, abuf, bbuf, wbuf) -> float:
    """One full vertex sweep of the covariance-completion iteration.

    For each vertex j, the off-neighborhood entries of column/row j of W are
    replaced by their determinant-maximizing values given the rest of W,
    while entries on the neighborhood (and the diagonal) stay pinned to S.
    Returns the max absolute change over the sweep, or a negative value if a
    neighborhood subsystem was not positive definite.
    """
    p = W.shape[0]
    delta = 0.0
    for j in range(p):
        nbrs = indices[indptr[j]:indptr[j + 1]]
        if nbrs.size == 0:
            col = W[:, j]
            change = np.abs(col[np.arange(p) != j]).max(initial=0.0)
            delta = max(delta, change)
            W[:, j] = 0.0
            W[j, :] = 0.0
            W[j, j] = S[j, j]
            continue
        a = W[np.ix_(nbrs, nbrs)]
        b = S[nbrs, j]
        try:
            beta = sla.solve(a, b, assume_a="pos")
        except (sla.LinAlgError, ValueError):
            return -float(j + 1)
        w_new = W[nbrs, :].T @ beta
        keep = np.arange(p) != j
        change = np.abs(w_new[keep] - W[keep, j]).max(initial=0.0)
        delta = max(delta, change)
        w_new[j] = S[j, j]
        W[:, j] = w_new
        W[j, :] = w_new
    return delta


def gmle_finalize(W, S, indptr, indices, omega) -> float:
    """Assemble the precision matrix column-by-column from converged W.

    omega gets exact zeros off the neighborhood structure. Returns 0.0 on
    success or -(j+1) if column j's Schur complement is not positive.
    """
    p = W.shape[0]
    for j in range(p):
        nbrs = indices[indptr[j]:indptr[j + 1]]
        if nbrs.size == 0:
            if W[j, j] <= 0.0:
                return -float(j + 1)
            omega[j, j] = 1.0 / W[j, j]
            continue
        a = W[np.ix_(nbrs, nbrs)]
        b = S[nbrs, j]
        try:
            beta = sla.solve(a, b, assume_a="pos")
        except (sla.LinAlgError, ValueError):
            return -float(j + 1)
        schur = W[j, j] - float(W[nbrs, j] @ beta)
        if schur <= 0.0:
            return -float(j + 1)
        ojj = 1.0 / schur
        omega[j, j] = ojj
        omega[nbrs, j] = -beta * ojj
    return 0.0


def glasso_column_cd(W, idx, j, s12, pen, beta, q, thr, max_pass) -> float:
    """Coordinate-descent lasso for one column of the penalized problem.

    Solves min_b 0.5 b' V b - s12' b + sum_i pen_i |b_i| with V = W[idx][:, idx],
    updating `beta` in place and maintaining q = V beta. Returns the max
    absolute coefficient change of the last pass.
    """
    m = idx.shape[0]
    q[:] = 0.0
    for k in range(m):
        if beta[k] != 0.0:
            q += beta[k] * W[idx[k], idx]
    dmax = 0.0
    for _ in range(max_pass):
        dmax = 0.0
        for k in range(m):
            vkk = W[idx[k], idx[k]]
            r = s12[k] - (q[k] - vkk * beta[k])
            if r > pen[k]:
                b_new = (r - pen[k]) / vkk
            elif r < -pen[k]:
                b_new = (r + pen[k]) / vkk
            else:
                b_new = 0.0
            diff = b_new - beta[k]
            if diff != 0.0:
                q += diff * W[idx[k], idx]
                beta[k] = b_new
                dmax = max(dmax, abs(diff))
        if dmax < thr:
            break
    return dmax

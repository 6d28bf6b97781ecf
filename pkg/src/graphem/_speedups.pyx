# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled hot kernels: the vertex sweep of the graph-constrained covariance
solver and the per-column coordinate descent of the penalized solver.

Mirrors _kernels_py.py; see that module for the contracts.
"""

import numpy as np

from libc.math cimport fabs
from scipy.linalg.cython_lapack cimport dposv


def gmle_sweep(double[:, ::1] W, const double[:, ::1] S,
               const int[::1] indptr, const int[::1] indices,
               double[::1] abuf, double[::1] bbuf, double[::1] wbuf):
    cdef int p = W.shape[0]
    cdef int j, k, i, c, m, start, info
    cdef int one = 1
    cdef char uplo = b'L'
    cdef double delta = 0.0, d, bk, sjj
    for j in range(p):
        start = indptr[j]
        m = indptr[j + 1] - start
        if m == 0:
            for i in range(p):
                if i != j:
                    d = fabs(W[i, j])
                    if d > delta:
                        delta = d
                    W[i, j] = 0.0
                    W[j, i] = 0.0
            continue
        for k in range(m):
            c = indices[start + k]
            for i in range(m):
                abuf[k * m + i] = W[indices[start + i], c]
            bbuf[k] = S[c, j]
        dposv(&uplo, &m, &one, &abuf[0], &m, &bbuf[0], &m, &info)
        if info != 0:
            return -float(j + 1)
        for i in range(p):
            wbuf[i] = 0.0
        for k in range(m):
            c = indices[start + k]
            bk = bbuf[k]
            for i in range(p):
                wbuf[i] = wbuf[i] + bk * W[c, i]
        sjj = S[j, j]
        for i in range(p):
            if i == j:
                W[j, j] = sjj
                continue
            d = fabs(wbuf[i] - W[i, j])
            if d > delta:
                delta = d
            W[i, j] = wbuf[i]
            W[j, i] = wbuf[i]
    return delta


def gmle_finalize(const double[:, ::1] W, const double[:, ::1] S,
                  const int[::1] indptr, const int[::1] indices,
                  double[:, ::1] omega):
    cdef int p = W.shape[0]
    cdef int j, k, i, c, m, start, info
    cdef int one = 1
    cdef char uplo = b'L'
    cdef double schur, ojj
    abuf_arr = np.empty(p * p, dtype=np.float64)
    bbuf_arr = np.empty(p, dtype=np.float64)
    cdef double[::1] abuf = abuf_arr
    cdef double[::1] bbuf = bbuf_arr
    for j in range(p):
        start = indptr[j]
        m = indptr[j + 1] - start
        if m == 0:
            if W[j, j] <= 0.0:
                return -float(j + 1)
            omega[j, j] = 1.0 / W[j, j]
            continue
        for k in range(m):
            c = indices[start + k]
            for i in range(m):
                abuf[k * m + i] = W[indices[start + i], c]
            bbuf[k] = S[c, j]
        dposv(&uplo, &m, &one, &abuf[0], &m, &bbuf[0], &m, &info)
        if info != 0:
            return -float(j + 1)
        schur = W[j, j]
        for k in range(m):
            schur = schur - W[indices[start + k], j] * bbuf[k]
        if schur <= 0.0:
            return -float(j + 1)
        ojj = 1.0 / schur
        omega[j, j] = ojj
        for k in range(m):
            omega[indices[start + k], j] = -bbuf[k] * ojj
    return 0.0


def glasso_column_cd(const double[:, ::1] W, const int[::1] idx, int j,
                     const double[::1] s12, const double[::1] pen,
                     double[::1] beta, double[::1] q, double thr, int max_pass):
    cdef int m = idx.shape[0]
    cdef int k, i, c, p_
    cdef double bk, vkk, r, b_new, diff, ad
    cdef double dmax = 0.0
    for i in range(m):
        q[i] = 0.0
    for k in range(m):
        bk = beta[k]
        if bk != 0.0:
            c = idx[k]
            for i in range(m):
                q[i] = q[i] + bk * W[c, idx[i]]
    for p_ in range(max_pass):
        dmax = 0.0
        for k in range(m):
            c = idx[k]
            vkk = W[c, c]
            r = s12[k] - (q[k] - vkk * beta[k])
            if r > pen[k]:
                b_new = (r - pen[k]) / vkk
            elif r < -pen[k]:
                b_new = (r + pen[k]) / vkk
            else:
                b_new = 0.0
            diff = b_new - beta[k]
            if diff != 0.0:
                for i in range(m):
                    q[i] = q[i] + diff * W[c, idx[i]]
                beta[k] = b_new
                ad = fabs(diff)
                if ad > dmax:
                    dmax = ad
        if dmax < thr:
            break
    return dmax

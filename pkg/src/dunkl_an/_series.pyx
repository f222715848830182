# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled multi-index shell summation."""

from libc.math cimport fabs

import numpy as np


cdef void _walk(int j, int n, int used, double prod, const double* b,
                const double* x, int order, const double* leaf,
                double* shells, double* abs_shells) noexcept nogil:
    cdef int mj, k
    cdef double t = prod, v
    if j == n - 1:
        for mj in range(order - used + 1):
            k = used + mj
            v = t * leaf[k]
            shells[k] += v
            abs_shells[k] += fabs(v)
            t *= (b[j] + mj) * x[j] / (mj + 1)
            if t == 0.0:
                break
        return
    for mj in range(order - used + 1):
        _walk(j + 1, n, used + mj, t, b, x, order, leaf, shells, abs_shells)
        t *= (b[j] + mj) * x[j] / (mj + 1)
        if t == 0.0:
            break


def shell_sums(b, x, leaf, int order):
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] lv = np.ascontiguousarray(leaf, dtype=np.float64)
    cdef int n = bv.shape[0]
    if xv.shape[0] != n:
        raise ValueError("b and x must have the same length")
    if lv.shape[0] < order + 1:
        raise ValueError("leaf factors must cover every shell")
    shells = np.zeros(order + 1)
    abs_shells = np.zeros(order + 1)
    cdef double[::1] sv = shells
    cdef double[::1] av = abs_shells
    if n == 0:
        shells[0] = lv[0]
        abs_shells[0] = fabs(lv[0])
        return shells, abs_shells
    with nogil:
        _walk(0, n, 0, 1.0, &bv[0], &xv[0], order, &lv[0], &sv[0], &av[0])
    return shells, abs_shells

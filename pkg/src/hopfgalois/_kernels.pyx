# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for blocked elimination over a prime field.

Only the narrow, branchy parts of elimination live here: the panel
factorization (pivot search plus rank-1 updates on a tall, thin block) and
the inverses of the small triangular blocks it produces.  The wide trailing
updates are plain matrix products and stay in numpy/BLAS.
"""

import numpy as np

from libc.stdint cimport int64_t


cdef inline int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a % p, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def factor_panel(int64_t[:, ::1] P, int64_t p):
    """Eliminate a panel in place, pivoting on the first nonzero row per column.

    Args:
        P: panel with entries in [0, p), shape (m, k); overwritten with the
            row-permuted, eliminated panel.
        p: the prime modulus.

    Returns:
        (perm, pivcols, L): ``perm[i]`` is the original row now at slot i,
        ``pivcols`` the panel columns holding pivots, and ``L`` the (m, r)
        unit lower-trapezoidal multiplier matrix.
    """
    cdef Py_ssize_t m = P.shape[0], k = P.shape[1]
    cdef Py_ssize_t rmax = min(m, k)
    perm_arr = np.arange(m, dtype=np.int64)
    L_arr = np.zeros((m, rmax), dtype=np.int64)
    piv_arr = np.zeros(rmax, dtype=np.int64)
    cdef int64_t[::1] perm = perm_arr
    cdef int64_t[:, ::1] L = L_arr
    cdef int64_t[::1] piv = piv_arr
    cdef Py_ssize_t rr = 0, i, j, c, q
    cdef int64_t inv, f, g, tmp
    # Updates below the pivot row are accumulated without reduction: entries
    # start below p and each step adds less than p**2, so k steps stay far
    # inside int64.  A value is reduced only when it is about to be read as a
    # pivot candidate or as part of a pivot row.
    for j in range(k):
        if rr == m:
            break
        i = rr
        while i < m:
            P[i, j] %= p
            if P[i, j] != 0:
                break
            i += 1
        if i == m:
            continue
        if i != rr:
            for c in range(k):
                tmp = P[i, c]
                P[i, c] = P[rr, c]
                P[rr, c] = tmp
            for q in range(rr):
                tmp = L[i, q]
                L[i, q] = L[rr, q]
                L[rr, q] = tmp
            tmp = perm[i]
            perm[i] = perm[rr]
            perm[rr] = tmp
        for c in range(j, k):
            P[rr, c] %= p
        inv = _inv_mod(P[rr, j], p)
        L[rr, rr] = 1
        for i in range(rr + 1, m):
            f = P[i, j] % p
            if f != 0:
                f = (f * inv) % p
                L[i, rr] = f
                g = p - f
                for c in range(j, k):
                    P[i, c] += g * P[rr, c]
            else:
                P[i, j] = 0
        piv[rr] = j
        rr += 1
    for i in range(m):
        for c in range(k):
            P[i, c] %= p
    return perm_arr, piv_arr[:rr].copy(), L_arr[:, :rr].copy()


def unit_lower_inverse(int64_t[:, ::1] L, int64_t p):
    """Inverse of a unit lower-triangular matrix mod p."""
    cdef Py_ssize_t n = L.shape[0], i, j, t
    out_arr = np.eye(n, dtype=np.int64)
    cdef int64_t[:, ::1] X = out_arr
    cdef int64_t acc
    for i in range(n):
        for j in range(i):
            acc = 0
            for t in range(j, i):
                acc = (acc + L[i, t] * X[t, j]) % p
            X[i, j] = (p - acc) % p
    return out_arr


def upper_inverse(int64_t[:, ::1] U, int64_t p):
    """Inverse of an upper-triangular matrix with nonzero diagonal mod p."""
    cdef Py_ssize_t n = U.shape[0], i, j, t
    out_arr = np.zeros((n, n), dtype=np.int64)
    cdef int64_t[:, ::1] X = out_arr
    cdef int64_t acc, d
    for i in range(n - 1, -1, -1):
        d = _inv_mod(U[i, i], p)
        X[i, i] = d
        for j in range(i + 1, n):
            acc = 0
            for t in range(i + 1, j + 1):
                acc = (acc + U[i, t] * X[t, j]) % p
            X[i, j] = ((p - acc) % p) * d % p
    return out_arr

"""Pure-numpy versions of the elimination kernels.

Same contracts as the compiled module; selected automatically when the
extension is not built, or forced with ``HOPFGALOIS_PURE_PYTHON=1``.
"""

from __future__ import annotations

import numpy as np


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def factor_panel(P: np.ndarray, p: int):
    m, k = P.shape
    perm = np.arange(m, dtype=np.int64)
    L = np.zeros((m, min(m, k)), dtype=np.int64)
    piv = []
    rr = 0
    for j in range(k):
        if rr == m:
            break
        nz = np.flatnonzero(P[rr:, j])
        if nz.size == 0:
            continue
        i = rr + int(nz[0])
        if i != rr:
            P[[rr, i]] = P[[i, rr]]
            L[[rr, i], :rr] = L[[i, rr], :rr]
            perm[[rr, i]] = perm[[i, rr]]
        inv = _inv_mod(P[rr, j], p)
        L[rr, rr] = 1
        f = (P[rr + 1:, j] * inv) % p
        rows = np.flatnonzero(f)
        if rows.size:
            L[rr + 1 + rows, rr] = f[rows]
            sub = P[rr + 1 + rows, j:] - np.outer(f[rows], P[rr, j:])
            P[rr + 1 + rows, j:] = sub % p
        piv.append(j)
        rr += 1
    return perm, np.array(piv, dtype=np.int64), L[:, :rr].copy()


def unit_lower_inverse(L: np.ndarray, p: int) -> np.ndarray:
    n = L.shape[0]
    X = np.eye(n, dtype=np.int64)
    for i in range(n):
        if i:
            X[i, :i] = (-(L[i, :i] @ X[:i, :i])) % p
    return X


def upper_inverse(U: np.ndarray, p: int) -> np.ndarray:
    n = U.shape[0]
    X = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        d = _inv_mod(U[i, i], p)
        X[i, i] = d
        if i + 1 < n:
            X[i, i + 1:] = ((-(U[i, i + 1:] @ X[i + 1:, i + 1:])) % p) * d % p
    return X

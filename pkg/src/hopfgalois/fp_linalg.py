"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy ``int64`` arrays holding canonical residues in ``[0, p)``.
Elimination is blocked: a narrow panel is factored by a compiled kernel (or
its numpy twin) and the wide trailing update is a float64 matrix product,
which is exact because every intermediate stays far below 2**53.

Index convention used by every module: the tensor basis vector ``u_i (x) v_j``
sits at position ``i * dim(v) + j`` (numpy's row-major order), and an
operator ``T`` on a space with basis ``b`` is stored with ``T[k, l]`` the
coefficient of ``b_k`` in ``T(b_l)``; it is vectorized row-major as well.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

if os.environ.get("HOPFGALOIS_PURE_PYTHON"):
    from . import _kernels_py as _kernels
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from . import _kernels_py as _kernels

BACKEND = "compiled" if _kernels.__name__.endswith("._kernels") else "python"

PANEL = 64
MAX_PRIME = 251


class NoSolutionError(ArithmeticError):
    """Raised by :func:`solve` when the system is inconsistent."""


class SingularMatrixError(ArithmeticError):
    """Raised by :func:`inverse` for singular input."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def check_prime(p: int) -> int:
    """Validate a field characteristic and return it as ``int``."""
    p = int(p)
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"modulus must be a prime <= {MAX_PRIME}, got {p}")
    return p


def reduce(a, p: int) -> np.ndarray:
    """Canonical residues of an integer array (copy)."""
    return np.remainder(np.asarray(a, dtype=np.int64), p)


def inv_mod(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, -1, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of reduced matrices mod p, routed through BLAS."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 >= 2**52:  # pragma: no cover - far beyond fixtures
        return (a.astype(object) @ b.astype(object)) % p
    out = np.matmul(a.astype(np.float64), b.astype(np.float64))
    return np.remainder(out, p).astype(np.int64)


def kron(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Kronecker product with the row-major tensor convention."""
    return np.remainder(np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)), p)


def matpow(m: np.ndarray, k: int, p: int) -> np.ndarray:
    result = np.eye(m.shape[0], dtype=np.int64)
    base = reduce(m, p)
    while k:
        if k & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# elimination core


def _factor(W: np.ndarray, r0: int, c0: int, c1: int, p: int):
    """Recursive column-split elimination of ``W[r0:, c0:c1]`` in place.

    Narrow blocks go to the panel kernel; wider ones are halved, the left
    half is factored, its transformation is applied to the right half with
    two matrix products, and the right half is factored below the new
    pivots.  Halving keeps the inner dimension of those products large,
    which is what makes BLAS efficient here.

    Returns:
        ``(perm, pivcols, L)`` relative to row ``r0``: row permutation of
        ``W[r0:]`` applied within the block, absolute pivot columns, and the
        unit lower-trapezoidal multipliers.
    """
    m = W.shape[0]
    w = c1 - c0
    if w <= PANEL:
        P = np.ascontiguousarray(np.remainder(W[r0:, c0:c1], p), dtype=np.int64)
        perm, pc, L = _kernels.factor_panel(P, p)
        W[r0:, c0:c1] = P
        return perm, c0 + pc, L
    cm = c0 + max(PANEL, (w // 2) // PANEL * PANEL)
    perm1, pc1, L1 = _factor(W, r0, c0, cm, p)
    r1 = len(pc1)
    _apply_rows(W, r0, perm1, L1, cm, c1, p)
    if r0 + r1 == m:
        return perm1, pc1, L1
    perm2, pc2, L2 = _factor(W, r0 + r1, cm, c1, p)
    if len(pc2) == 0:
        return perm1, pc1, L1
    perm = perm1.copy()
    perm[r1:] = perm1[r1:][perm2]
    L = np.zeros((m - r0, r1 + len(pc2)), dtype=np.int64)
    L[:, :r1] = L1
    L[r1:, :r1] = L1[r1:][perm2]
    L[r1:, r1:] = L2
    return perm, np.concatenate([pc1, pc2]), L


def _unit_lower_solve(L: np.ndarray, T: np.ndarray, p: int) -> np.ndarray:
    """Solve ``L X = T`` for unit lower-triangular ``L`` by recursive halving."""
    n = L.shape[0]
    if n <= PANEL:
        inv = _kernels.unit_lower_inverse(np.ascontiguousarray(L), p)
        return np.remainder(inv.astype(np.float64) @ T, p)
    h = n // 2
    X1 = _unit_lower_solve(L[:h, :h], T[:h], p)
    T2 = np.remainder(T[h:] - L[h:, :h].astype(np.float64) @ X1, p)
    X2 = _unit_lower_solve(L[h:, h:], T2, p)
    return np.vstack([X1, X2])


def _apply_rows(W: np.ndarray, r0: int, perm, L, ca: int, cb: int, p: int) -> None:
    """Apply a factored block's row operations to columns ``[ca, cb)``."""
    rp = L.shape[1]
    if rp == 0 or ca >= cb:
        return
    moved = np.flatnonzero(perm != np.arange(perm.size))
    if moved.size:
        W[r0 + moved, ca:cb] = W[r0 + perm[moved], ca:cb]
    top = _unit_lower_solve(L[:rp], np.remainder(W[r0:r0 + rp, ca:cb], p), p)
    W[r0:r0 + rp, ca:cb] = top
    below = L[rp:]
    if below.shape[0] == 0:
        return
    rows = np.flatnonzero(below.any(axis=1))
    if rows.size == below.shape[0]:
        W[r0 + rp:, ca:cb] -= below.astype(np.float64) @ top
    elif rows.size:
        W[r0 + rp + rows, ca:cb] -= below[rows].astype(np.float64) @ top


def _forward(W: np.ndarray, p: int, ncp: int) -> list[int]:
    """In-place row echelon form of a float64 work array.

    Only columns ``< ncp`` are eligible as pivots.  Rows at and below the
    returned rank are zero in those columns.  Entries are kept exact but not
    necessarily reduced; magnitudes stay below ``cols * p**2``.
    """
    if ncp == 0 or W.shape[0] == 0:
        return []
    perm, pc, L = _factor(W, 0, 0, ncp, p)
    _apply_rows(W, 0, perm, L, ncp, W.shape[1], p)
    return [int(c) for c in pc]


def _backward(U: np.ndarray, p: int, pivots: list[int]) -> np.ndarray:
    """Turn echelon rows (float64, exact) into reduced echelon form (int64)."""
    r = len(pivots)
    U = np.remainder(U, p)
    R = np.zeros(U.shape, dtype=np.float64)
    piv = np.asarray(pivots, dtype=np.int64)
    for b1 in range(r, 0, -PANEL):
        b0 = max(0, b1 - PANEL)
        block = U[b0:b1]
        if b1 < r:
            block = np.remainder(block - U[b0:b1, piv[b1:]] @ R[b1:r], p)
        tri = block[:, piv[b0:b1]].astype(np.int64)
        tinv = _kernels.upper_inverse(np.ascontiguousarray(tri), p)
        R[b0:b1] = np.remainder(tinv.astype(np.float64) @ block, p)
    return R.astype(np.int64)


def rref(m: np.ndarray, p: int, ncp: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Args:
        m: matrix with integer entries (reduced mod p internally).
        p: prime modulus.
        ncp: restrict pivots to the first ``ncp`` columns (default: all).

    Returns:
        ``(R, pivots)`` where ``R`` holds the ``rank`` nonzero rows.
    """
    W = np.ascontiguousarray(np.remainder(np.asarray(m, dtype=np.float64), p))
    if W.ndim != 2:
        raise ValueError("expected a matrix")
    ncp = W.shape[1] if ncp is None else ncp
    if W.size == 0:
        return np.zeros((0, W.shape[1]), dtype=np.int64), []
    pivots = _forward(W, p, ncp)
    return _backward(W[: len(pivots)], p, pivots), pivots


def rank(m: np.ndarray, p: int) -> int:
    W = np.ascontiguousarray(np.remainder(np.asarray(m, dtype=np.float64), p))
    if W.size == 0:
        return 0
    return len(_forward(W, p, W.shape[1]))


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One solution of ``a @ x = b``; free variables are set to zero.

    Raises:
        ValueError: row counts differ.
        NoSolutionError: the system is inconsistent.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    W = np.ascontiguousarray(np.remainder(np.hstack([a, b]).astype(np.float64), p))
    pivots = _forward(W, p, n)
    r = len(pivots)
    if np.remainder(W[r:, n:], p).any():
        raise NoSolutionError("inconsistent linear system")
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    if r:
        R = _backward(W[:r], p, pivots)
        x[pivots] = R[:, n:]
    return x[:, 0] if vector else x


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of the null space, one vector per row.

    Row ``k`` has a 1 in the k-th pivot-free column and 0 in the others.
    """
    m = np.asarray(m)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(m, p)
    free = np.setdiff1d(np.arange(n), pivots)
    K = np.zeros((free.size, n), dtype=np.int64)
    K[np.arange(free.size), free] = 1
    if pivots:
        K[:, pivots] = np.remainder(-R[:, free].T, p)
    return K


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("inverse needs a square matrix")
    n = m.shape[0]
    try:
        x = solve(m, np.eye(n, dtype=np.int64), p)
    except NoSolutionError:
        raise SingularMatrixError("matrix is singular") from None
    if n and rank(m, p) < n:  # pragma: no cover - solve already failed
        raise SingularMatrixError("matrix is singular")
    return x


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F_p^n stored by its reduced echelon basis (rows)."""

    p: int
    n: int
    basis: np.ndarray
    pivots: tuple[int, ...] = field(default=())

    @classmethod
    def span(cls, vectors, p: int, n: int | None = None) -> "Subspace":
        vecs = np.asarray(vectors, dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs[None, :]
        if n is None:
            n = vecs.shape[1]
        if vecs.size == 0:
            return cls(p, n, np.zeros((0, n), dtype=np.int64), ())
        vecs = vecs.reshape(-1, n)
        if vecs.shape[0] == 0:
            return cls(p, n, np.zeros((0, n), dtype=np.int64), ())
        R, piv = rref(vecs, p)
        return cls(p, n, R, tuple(piv))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Coordinates in the echelon basis; raises if ``v`` is outside."""
        v = np.remainder(np.asarray(v, dtype=np.int64), self.p)
        c = v[..., list(self.pivots)]
        if not np.array_equal(matmul(c, self.basis, self.p), v):
            raise ValueError("vector not in subspace")
        return c

    def contains(self, v: np.ndarray) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.n == other.n
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:  # pragma: no cover - identity semantics suffice
        return hash((self.p, self.n, self.basis.tobytes()))


def common_kernel(constraints, p: int, n: int) -> np.ndarray:
    """Joint null space of several linear maps given as callables.

    Each constraint maps a stack of vectors (rows) to a stack of images; the
    null space is narrowed one constraint at a time, so every step after the
    first solves a system whose width is the current kernel dimension.

    Returns:
        Kernel basis as rows, in reduced echelon form.
    """
    K = np.eye(n, dtype=np.int64)
    for apply in constraints:
        if K.shape[0] == 0:
            break
        images = np.remainder(np.asarray(apply(K)), p).reshape(K.shape[0], -1)
        coeffs = kernel_basis(images.T, p)
        K = matmul(coeffs, K, p)
    if K.shape[0] == 0:
        return K
    return rref(K, p)[0]

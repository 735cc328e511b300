"""Finite-dimensional unital associative algebras given by structure constants.

An algebra of dimension ``d`` is a tensor ``mult`` of shape ``(d, d, d)`` with
``b_i b_j = sum_k mult[i, j, k] b_k`` plus a unit vector.  Elements are plain
coordinate vectors (``int64``, reduced mod p).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fp_linalg as fl


class AxiomError(ValueError):
    """Structure constants violate an algebra axiom."""


class NotInvertibleError(ArithmeticError):
    pass


class DegenerateFormError(ArithmeticError):
    """The Gram matrix of a linear form is singular."""


def contract(a: np.ndarray, b: np.ndarray, axes, p: int) -> np.ndarray:
    """``np.tensordot`` mod p, evaluated in float64 so BLAS does the work."""
    out = np.tensordot(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64), axes=axes)
    return np.remainder(out, p).astype(np.int64)


@dataclass(frozen=True, eq=False)
class FrobeniusForm:
    """A nondegenerate linear form with its Gram matrix and Nakayama map.

    ``gram[s, t] = chi(b_s b_t)`` and ``chi(b a) = chi(a * nakayama(b))``.
    """

    chi: np.ndarray
    gram: np.ndarray
    nakayama: np.ndarray
    order: int


class StructConstAlgebra:
    """Unital associative algebra over F_p.

    Args:
        p: prime characteristic.
        mult: ``(d, d, d)`` structure constants.
        unit: coordinates of the unit element.
        check: verify associativity and the unit law (on by default).
    """

    def __init__(self, p: int, mult, unit, check: bool = True, names=None):
        self.p = fl.check_prime(p)
        self.mult = fl.reduce(mult, self.p)
        if self.mult.ndim != 3 or len(set(self.mult.shape)) != 1:
            raise ValueError(f"mult must have shape (d, d, d), got {self.mult.shape}")
        self.dim = self.mult.shape[0]
        self.unit = fl.reduce(unit, self.p)
        self.names = list(names) if names is not None else None
        self._left = None
        self._right = None
        self._mult_f = None
        if check:
            self.check_axioms()

    # -- basic arithmetic -------------------------------------------------

    def multiply(self, x, y) -> np.ndarray:
        p = self.p
        xm = contract(x, self.mult, ([0], [0]), p)  # (j, k)
        return contract(y, xm, ([0], [0]), p)

    def power(self, x, k: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    @property
    def mult_float(self) -> np.ndarray:
        """``mult`` as float64, cached for BLAS-backed contractions."""
        if self._mult_f is None:
            self._mult_f = self.mult.astype(np.float64)
        return self._mult_f

    @property
    def left_mult(self) -> np.ndarray:
        """Stack of ``L_{b_i}`` matrices, shape ``(d, d, d)``."""
        if self._left is None:
            self._left = np.ascontiguousarray(self.mult.transpose(0, 2, 1))
        return self._left

    @property
    def right_mult(self) -> np.ndarray:
        """Stack of ``R_{b_j}`` matrices, shape ``(d, d, d)``."""
        if self._right is None:
            self._right = np.ascontiguousarray(self.mult.transpose(1, 2, 0))
        return self._right

    def left_mult_matrix(self, x) -> np.ndarray:
        return contract(x, self.left_mult, ([0], [0]), self.p)

    def right_mult_matrix(self, x) -> np.ndarray:
        return contract(x, self.right_mult, ([0], [0]), self.p)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element_inverse(self, x) -> np.ndarray:
        """Two-sided inverse of ``x``.

        Raises:
            NotInvertibleError: ``x`` is not a unit.
        """
        try:
            y = fl.solve(self.left_mult_matrix(x), self.unit, self.p)
        except fl.NoSolutionError:
            raise NotInvertibleError("element is not invertible") from None
        if not np.array_equal(self.multiply(y, x), self.unit):
            raise NotInvertibleError("one-sided inverse only")
        return y

    # -- axioms -----------------------------------------------------------

    def associator_defect(self) -> int:
        """Number of basis triples where associativity fails."""
        d, p, m = self.dim, self.p, self.mult
        lhs = contract(m.reshape(d * d, d), m, ([1], [0]), p).reshape(d, d, d, d)
        rhs = contract(m, m, ([1], [2]), p).transpose(0, 2, 3, 1)
        return int(np.any(lhs != rhs, axis=3).sum())

    def check_axioms(self) -> None:
        d = self.dim
        if self.unit.shape != (d,):
            raise AxiomError("unit has wrong length")
        eye = np.eye(d, dtype=np.int64)
        if not np.array_equal(self.left_mult_matrix(self.unit), eye):
            raise AxiomError("unit law fails on the left")
        if not np.array_equal(self.right_mult_matrix(self.unit), eye):
            raise AxiomError("unit law fails on the right")
        bad = self.associator_defect()
        if bad:
            raise AxiomError(f"associativity fails on {bad} basis triples")

    # -- derived algebras ---------------------------------------------------

    def opposite(self) -> "StructConstAlgebra":
        return StructConstAlgebra(self.p, self.mult.transpose(1, 0, 2), self.unit, check=False, names=self.names)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.transpose(1, 0, 2)))

    # -- structure ----------------------------------------------------------

    def multiplication_map(self) -> np.ndarray:
        """Matrix of ``A (x) A^op -> End A, x (x) y -> L_x R_y``.

        Columns are indexed by ``(i, j)`` and rows by the vectorized operator.
        """
        d, p, m = self.dim, self.p, self.mult
        t = contract(m, m, ([2], [0]), p)  # (i, l, j, k) = b_i b_l b_j
        return np.ascontiguousarray(t.transpose(3, 1, 0, 2).reshape(d * d, d * d))

    def is_central_simple(self) -> bool:
        return fl.rank(self.multiplication_map(), self.p) == self.dim**2

    def center(self) -> fl.Subspace:
        p = self.p
        diffs = np.remainder(self.left_mult - self.right_mult, p)
        constraints = [lambda K, D=D: fl.matmul(K, D.T, p) for D in diffs]
        return fl.Subspace.span(fl.common_kernel(constraints, p, self.dim), p, self.dim)

    def frobenius_data(self, chi) -> FrobeniusForm:
        """Gram matrix and Nakayama automorphism of the form ``chi``.

        Raises:
            DegenerateFormError: the Gram matrix is singular.
        """
        p, d = self.p, self.dim
        chi = fl.reduce(chi, p)
        gram = contract(self.mult, chi, ([2], [0]), p)
        try:
            theta = fl.solve(gram, gram.T, p)
        except fl.NoSolutionError:
            raise DegenerateFormError("Gram matrix of the form is singular") from None
        if fl.rank(gram, p) < d:
            raise DegenerateFormError("Gram matrix of the form is singular")
        # chi(b_s b_t) == chi(b_t * theta(b_s)) for every basis pair
        twisted = contract(contract(self.mult, theta, ([1], [0]), p), chi, ([1], [0]), p)
        if not np.array_equal(gram, twisted.T):
            raise AxiomError("Nakayama identity fails")
        order = _matrix_order(theta, p, cap=4 * p * p)
        return FrobeniusForm(chi, gram, theta, order)

    def subalgebra_closure(self, gens) -> fl.Subspace:
        """Smallest subalgebra (with unit) containing ``gens``."""
        p, d = self.p, self.dim
        gens = [fl.reduce(g, p) for g in gens]
        span = fl.Subspace.span([self.unit, *gens], p, d)
        mats = [self.left_mult_matrix(g) for g in gens]
        while True:
            images = [span.basis] + [fl.matmul(span.basis, L.T, p) for L in mats]
            grown = fl.Subspace.span(np.vstack(images), p, d)
            if grown.dim == span.dim:
                return span
            span = grown


def _matrix_order(m: np.ndarray, p: int, cap: int) -> int:
    eye = np.eye(m.shape[0], dtype=np.int64)
    cur = fl.reduce(m, p)
    for k in range(1, cap + 1):
        if np.array_equal(cur, eye):
            return k
        cur = fl.matmul(cur, m, p)
    raise ArithmeticError(f"matrix order exceeds cap {cap}")


def matrix_order(m: np.ndarray, p: int, cap: int) -> int:
    """Least ``k >= 1`` with ``m**k = I``; raises past ``cap``."""
    return _matrix_order(m, p, cap)


def tensor_algebra(a: StructConstAlgebra, b: StructConstAlgebra) -> StructConstAlgebra:
    """``A (x) B`` with basis ``a_i (x) b_j`` at index ``i * dim(B) + j``."""
    if a.p != b.p:
        raise ValueError("characteristics differ")
    da, db = a.dim, b.dim
    mult = np.einsum("ijk,xyz->ixjykz", a.mult, b.mult).reshape(da * db, da * db, da * db)
    return StructConstAlgebra(a.p, mult, fl.kron(a.unit[:, None], b.unit[:, None], a.p)[:, 0])


def truncated_polynomial(p: int, n: int | None = None) -> StructConstAlgebra:
    """``F_p[e]/(e^n)`` in the basis ``1, e, ..., e^(n-1)`` (default ``n = p``)."""
    n = p if n is None else n
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n - i):
            mult[i, j, i + j] = 1
    return StructConstAlgebra(p, mult, np.eye(n, dtype=np.int64)[0])


def matrix_algebra(p: int, n: int) -> StructConstAlgebra:
    """Full matrix algebra with basis ``E_{rs}`` at index ``r * n + s``."""
    d = n * n
    mult = np.zeros((d, d, d), dtype=np.int64)
    for r in range(n):
        for s in range(n):
            for t in range(n):
                mult[r * n + s, s * n + t, r * n + t] = 1
    return StructConstAlgebra(p, mult, np.eye(n, dtype=np.int64).reshape(-1))

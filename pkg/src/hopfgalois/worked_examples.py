"""Named restricted Lie algebras and the closed-form data attached to them.

Besides the Lie algebras themselves this module holds explicit dual bases of
``D(g*)`` and ``D(g)`` written in PBW coordinates, the expected bracket,
braiding and action tables in those bases, and the relation lists that the
transformed Hopf algebra is known to satisfy.  The golden tests compare the
computed objects against these entry by entry.

Elements are manipulated through the small :class:`Elem` wrapper so that a
relation such as ``S(phi0) = -phi0 phi1^-1`` can be written almost verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import fp_linalg as fl
from .checks import CheckReport
from .hopf_core import HopfData
from .restricted_lie import ReducedEnveloping, RestrictedLie
from .structconst_algebra import StructConstAlgebra

XI_EXAMPLE1 = (0, 1)
XI_EXAMPLE2 = (0, 0, 0, 1)


class ParameterError(ValueError):
    """Fixture parameters violate a stated constraint."""


# ---------------------------------------------------------------------------
# the Lie algebras


def example1(p: int) -> RestrictedLie:
    """``[e0, e1] = e1`` with ``e0^[p] = e0``, ``e1^[p] = 0``."""
    return RestrictedLie.from_brackets(p, 2, {(0, 1): [0, 1]}, [[1, 0], [0, 0]])


def example2(p: int, a: int, b: int) -> RestrictedLie:
    """Four-dimensional solvable algebra with weights ``a``, ``b``, ``a + b`` under ``e0``.

    Raises:
        ParameterError: ``a + b`` vanishes mod ``p``.
    """
    fl.check_prime(p)
    if (a + b) % p == 0:
        raise ParameterError(f"a + b = {a + b} must be nonzero mod {p}")
    br = {(0, 1): [0, a, 0, 0], (0, 2): [0, 0, b, 0], (0, 3): [0, 0, 0, a + b], (1, 2): [0, 0, 0, 1]}
    pmap = np.zeros((4, 4), dtype=np.int64)
    pmap[0, 0] = 1
    return RestrictedLie.from_brackets(p, 4, br, pmap)


def example2_exponents(p: int, a: int, b: int) -> tuple[int, int]:
    """``(c, d)`` in ``[0, p)`` with ``b + c(a+b) = 0`` and ``a + d(a+b) = 0`` mod ``p``."""
    s = fl.inv_mod((a + b) % p, p)
    return (-b * s) % p, (-a * s) % p


def abelian(p: int, n: int) -> RestrictedLie:
    """Abelian algebra with zero p-map."""
    return RestrictedLie(p, np.zeros((n, n, n), dtype=np.int64), np.zeros((n, n), dtype=np.int64))


def zero(p: int) -> RestrictedLie:
    return abelian(p, 0)


AFFINE_NAMES = ("E00", "E01", "E10", "E11", "t0", "t1")


def affine_plane(p: int) -> RestrictedLie:
    """``gl_2`` acting on ``F_p^2`` by translations, as 3x3 matrices.

    The basis is ``E00, E01, E10, E11`` followed by the translations
    ``t0 = E02`` and ``t1 = E12``.
    """
    mats = []
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (1, 2)):
        m = np.zeros((3, 3), dtype=np.int64)
        m[i, j] = 1
        mats.append(m)
    return RestrictedLie.from_matrices(p, mats, AFFINE_NAMES)


def affine_natural_module(p: int) -> np.ndarray:
    """The defining 2-dimensional module of ``gl_2``; translations act as zero."""
    out = np.zeros((6, 2, 2), dtype=np.int64)
    for k, (i, j) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        out[k, i, j] = 1
    return out


def example1_induced_module(p: int) -> np.ndarray:
    """The ``p``-dimensional ``U_xi``-module of Example 1 at ``xi = (0, 1)``.

    Basis ``v_k = e0^k v`` with ``e1 v = v``: then ``e0`` shifts the basis
    (with ``e0 v_(p-1) = v_1`` because ``e0^p = e0``) and
    ``e1 v_k = (e0 - 1)^k v``.
    """
    E0 = np.zeros((p, p), dtype=np.int64)
    E1 = np.zeros((p, p), dtype=np.int64)
    for k in range(p - 1):
        E0[k + 1, k] = 1
    E0[1 % p, p - 1] += 1
    for k in range(p):
        for j in range(k + 1):
            E1[j, k] = comb(k, j) * (-1) ** (k - j)
    return np.remainder(np.array([E0, E1]), p)


# ---------------------------------------------------------------------------
# element arithmetic


@dataclass(frozen=True, eq=False)
class Elem:
    """An algebra element with operator overloading (integers act as scalars)."""

    alg: StructConstAlgebra
    v: np.ndarray

    @property
    def p(self) -> int:
        return self.alg.p

    def _lift(self, other) -> "Elem":
        if isinstance(other, Elem):
            return other
        return Elem(self.alg, (int(other) * self.alg.unit) % self.p)

    def __add__(self, other):
        return Elem(self.alg, (self.v + self._lift(other).v) % self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.alg, (self.v - self._lift(other).v) % self.p)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Elem(self.alg, (-self.v) % self.p)

    def __mul__(self, other):
        if isinstance(other, Elem):
            return Elem(self.alg, self.alg.multiply(self.v, other.v))
        return Elem(self.alg, (int(other) * self.v) % self.p)

    def __rmul__(self, other):
        return Elem(self.alg, (int(other) * self.v) % self.p)

    def __pow__(self, k: int):
        if k < 0:
            return Elem(self.alg, self.alg.element_inverse(self.v)) ** (-k)
        return Elem(self.alg, self.alg.power(self.v, k))

    def __matmul__(self, other: "Elem") -> "Tensor":
        return Tensor(np.outer(self.v, other.v) % self.p, self.p)

    def same(self, other) -> bool:
        return bool(np.array_equal(self.v, self._lift(other).v))


@dataclass(frozen=True, eq=False)
class Tensor:
    t: np.ndarray
    p: int

    def __add__(self, other: "Tensor"):
        return Tensor((self.t + other.t) % self.p, self.p)

    def __sub__(self, other: "Tensor"):
        return Tensor((self.t - other.t) % self.p, self.p)

    def __neg__(self):
        return Tensor((-self.t) % self.p, self.p)

    def __rmul__(self, c: int):
        return Tensor((int(c) * self.t) % self.p, self.p)

    def same(self, other: "Tensor") -> bool:
        return bool(np.array_equal(self.t, other.t))


def hopf_ops(H: HopfData):
    """``(delta, eps, S)`` acting on :class:`Elem` values of ``H.algebra``."""

    def delta(x: Elem) -> Tensor:
        return Tensor(H.delta(x.v), H.p)

    def eps(x: Elem) -> int:
        return H.eps(x.v)

    def S(x: Elem) -> Elem:
        return Elem(H.algebra, H.S(x.v))

    return delta, eps, S


def commutator(x: Elem, y: Elem) -> Elem:
    return x * y - y * x


# ---------------------------------------------------------------------------
# explicit dual bases


def _columns(*elems: Elem) -> np.ndarray:
    return np.stack([e.v for e in elems], axis=1)


def example1_tables(U: ReducedEnveloping) -> tuple[np.ndarray, np.ndarray]:
    """``(tau, sigma)`` for Example 1 as stacks of ``d x 2`` matrices."""
    A = U.algebra
    e0, e1 = (Elem(A, g) for g in U.generators)
    one, nil = Elem(A, A.unit), Elem(A, 0 * A.unit)
    tau = np.array([_columns(one, -e0 * e1**-1), _columns(nil, e1**-1)])
    sigma = np.array([_columns(one, nil), _columns(e0, e1)])
    return tau, sigma


def example2_tables(U: ReducedEnveloping, a: int, b: int) -> tuple[np.ndarray, np.ndarray]:
    """``(tau, sigma)`` for Example 2; ``c, d`` come from :func:`example2_exponents`."""
    A, p = U.algebra, U.lie.p
    c, d = example2_exponents(p, a, b)
    e0, e1, e2, e3 = (Elem(A, g) for g in U.generators)
    one, nil = Elem(A, A.unit), Elem(A, 0 * A.unit)

    def e3_pow(k: int) -> Elem:
        # e3^p = 1, so exponents only matter mod p
        return e3 ** (k % p)

    tau = np.array([
        _columns(one, a * e2 * e3_pow(-1), -b * e1 * e3_pow(-1), (b * e1 * e2 - a * e2 * e1 - e0 * e3) * e3_pow(-2)),
        _columns(nil, e3_pow(d), nil, -e1 * e3_pow(d - 1)),
        _columns(nil, nil, e3_pow(c), -e2 * e3_pow(c - 1)),
        _columns(nil, nil, nil, e3_pow(-1)),
    ])
    sigma = np.array([
        _columns(one, nil, nil, nil),
        _columns(-a * e2 * e3_pow(c), e3_pow(c + 1), nil, nil),
        _columns(b * e1 * e3_pow(d), nil, e3_pow(d + 1), nil),
        _columns(e0, e1, e2, e3),
    ])
    return tau, sigma


# ---------------------------------------------------------------------------
# expected tables in the tau basis


def example1_bracket(p: int) -> np.ndarray:
    """``gamma[i, j]`` = coordinates of ``[tau_i, tau_j]``."""
    g = np.zeros((2, 2, 2), dtype=np.int64)
    g[0, 1] = [0, -1]
    g[1, 0] = [0, 1]
    return g % p


def example1_braiding(p: int) -> np.ndarray:
    """Column ``2a + b`` holds the image of ``tau_a (x) tau_b``."""
    C = np.zeros((4, 4), dtype=np.int64)
    C[0, 0] = 1  # t0 t0 -> t0 t0
    C[2, 1] = C[3, 1] = 1  # t0 t1 -> t1 (t0 + t1)
    C[1, 2], C[3, 2] = 1, -1  # t1 t0 -> (t0 - t1) t1
    C[3, 3] = 1
    return C % p


def example1_action(p: int) -> np.ndarray:
    """``M[i]``: column ``b`` holds the coordinates of ``phi_i tau_b``."""
    M = np.zeros((2, 2, 2), dtype=np.int64)
    M[0][:, 1] = [0, 1]
    M[1][:, 0] = [1, -1]
    M[1][:, 1] = [0, 1]
    return M % p


def example2_bracket(p: int, a: int, b: int) -> np.ndarray:
    g = np.zeros((4, 4, 4), dtype=np.int64)
    g[0, 0, 3] = -a * b
    g[0, 1, 1] = -a
    g[0, 2, 2] = -b
    g[0, 3, 3] = -(a + b)
    g[1, 0, 1] = a
    g[1, 2, 3] = -1
    g[2, 0, 2] = b
    g[2, 1, 3] = 1
    g[3, 0, 3] = a + b
    return g % p


# ---------------------------------------------------------------------------
# relation lists in E


def example1_relations(H: HopfData, phis: np.ndarray) -> CheckReport:
    """Relations of ``E`` in terms of ``phi_i = Phi_(tau_i sigma_1)`` (coordinates in ``H``)."""
    p = H.p
    delta, eps, S = hopf_ops(H)
    f0, f1 = (Elem(H.algebra, v) for v in phis)
    one = Elem(H.algebra, H.algebra.unit)
    rep = CheckReport("example1_relations")
    rep.record("[phi0,phi1] = phi1^2 - phi1", commutator(f0, f1).same(f1**2 - f1))
    rep.record("phi0 phi1 - phi1 (phi0 + phi1) = -phi1", (f0 * f1 - f1 * (f0 + f1)).same(-f1))
    rep.record("phi0^p = phi0", (f0**p).same(f0))
    rep.record("phi1^p = 1", (f1**p).same(1))
    rep.record("D(phi0) = 1 x phi0 + phi0 x phi1", delta(f0).same(one @ f0 + f0 @ f1))
    rep.record("D(phi1) = phi1 x phi1", delta(f1).same(f1 @ f1))
    rep.record("eps(phi0) = 0, eps(phi1) = 1", eps(f0) == 0 and eps(f1) == 1)
    rep.record("S(phi0) = -phi0 phi1^-1", S(f0).same(-f0 * f1**-1))
    rep.record("S(phi1) = phi1^-1", S(f1).same(f1**-1))
    return rep


def example2_relations(H: HopfData, phis: np.ndarray, a: int, b: int) -> CheckReport:
    """Relations of ``E`` in terms of ``phi_i = Phi_(tau_i sigma_3)``."""
    p = H.p
    c, d = example2_exponents(p, a, b)
    delta, eps, S = hopf_ops(H)
    f0, f1, f2, f3 = (Elem(H.algebra, v) for v in phis)
    one = Elem(H.algebra, H.algebra.unit)

    def f3_pow(k: int) -> Elem:
        return f3 ** (k % p)

    rep = CheckReport("example2_relations")
    rep.record("[phi0,phi1] = a phi1 (2 phi3 - 1)", commutator(f0, f1).same(a * f1 * (2 * f3 - 1)))
    rep.record("[phi0,phi2] = b phi2 (2 phi3 - 1)", commutator(f0, f2).same(b * f2 * (2 * f3 - 1)))
    rep.record("[phi0,phi3] = (a+b)(phi3^2 - phi3)", commutator(f0, f3).same((a + b) * (f3**2 - f3)))
    rep.record("[phi1,phi2] = phi3^2 - phi3", commutator(f1, f2).same(f3**2 - f3))
    rep.record("[phi1,phi3] = [phi2,phi3] = 0", commutator(f1, f3).same(0) and commutator(f2, f3).same(0))
    rep.record("phi0^p = phi0", (f0**p).same(f0))
    rep.record("phi1^p = phi2^p = 0", (f1**p).same(0) and (f2**p).same(0))
    rep.record("phi3^p = 1", (f3**p).same(1))
    rep.record("D(phi0)", delta(f0).same(
        one @ f0 - a * ((f2 * f3_pow(c)) @ f1) + b * ((f1 * f3_pow(d)) @ f2) + f0 @ f3))
    rep.record("D(phi1) = phi3^-d x phi1 + phi1 x phi3", delta(f1).same(f3_pow(-d) @ f1 + f1 @ f3))
    rep.record("D(phi2) = phi3^-c x phi2 + phi2 x phi3", delta(f2).same(f3_pow(-c) @ f2 + f2 @ f3))
    rep.record("D(phi3) = phi3 x phi3", delta(f3).same(f3 @ f3))
    rep.record("eps", [eps(f) for f in (f0, f1, f2, f3)] == [0, 0, 0, 1])
    rep.record("S(phi0) = (b phi1 phi2 - a phi2 phi1 - phi0 phi3) phi3^-2",
               S(f0).same((b * f1 * f2 - a * f2 * f1 - f0 * f3) * f3_pow(-2)))
    rep.record("S(phi1) = -phi1 phi3^(d-1)", S(f1).same(-f1 * f3_pow(d - 1)))
    rep.record("S(phi2) = -phi2 phi3^(c-1)", S(f2).same(-f2 * f3_pow(c - 1)))
    rep.record("S(phi3) = phi3^-1", S(f3).same(f3_pow(-1)))
    rep.details.update(c=c, d=d)
    return rep

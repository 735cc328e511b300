"""Hopf algebras over structure constants, module algebras, and R-matrices.

A coproduct is a dense tensor ``cop[k, i, j]`` with
``Delta(b_k) = sum cop[k, i, j] b_i (x) b_j``; an element of ``H (x) H`` is a
``d x d`` coefficient grid, and products there are computed by
:func:`tensor_mult`.  The antipode matrix has ``S(b_k)`` in column ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fp_linalg as fl
from .checks import CheckReport
from .restricted_lie import RestrictedLie, ReducedEnveloping, reduced_enveloping
from .structconst_algebra import StructConstAlgebra, contract

GROUPLIKE_GATE = 2**24


class IntegralSpaceDimensionError(ArithmeticError):
    pass


class SizeGateError(ValueError):
    pass


@dataclass(eq=False)
class HopfData:
    algebra: StructConstAlgebra
    coproduct: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    generators: np.ndarray | None = None
    names: list[str] | None = None

    def __post_init__(self):
        p = self.algebra.p
        self.coproduct = fl.reduce(self.coproduct, p)
        self.counit = fl.reduce(self.counit, p)
        self.antipode = fl.reduce(self.antipode, p)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def delta(self, x) -> np.ndarray:
        return contract(x, self.coproduct, ([0], [0]), self.p)

    def S(self, x) -> np.ndarray:
        return fl.matmul(self.antipode, fl.reduce(x, self.p), self.p)

    def eps(self, x) -> int:
        return int(np.dot(fl.reduce(x, self.p), self.counit) % self.p)

    def check_generators(self) -> np.ndarray:
        """Elements on which multiplicativity checks are run."""
        if self.generators is not None:
            return self.generators
        return np.eye(self.dim, dtype=np.int64)


def tensor_mult(a: StructConstAlgebra, X: np.ndarray, Y: np.ndarray, b: StructConstAlgebra | None = None) -> np.ndarray:
    """Product of two elements of ``A (x) B`` given as coefficient grids."""
    b = a if b is None else b
    p = a.p
    da, db = a.dim, b.dim
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    # intermediate reductions are skipped when the unreduced sum stays exact
    exact = float(da) ** 2 * float(db) ** 2 * float(p) ** 5 < 2.0**53
    # t1[j, c, s] = sum_i X[i, j] m_A[i, c, s]
    t1 = (X.T @ a.mult_float.reshape(da, da * da)).reshape(db, da, da)
    if not exact:
        t1 = np.remainder(t1, p)
    # t2[j, s, e] = sum_c t1[j, c, s] Y[c, e]
    t2 = t1.transpose(0, 2, 1) @ Y
    if not exact:
        t2 = np.remainder(t2, p)
    # z[s, u] = sum_{j, e} t2[j, s, e] m_B[j, e, u]
    z = t2.transpose(1, 0, 2).reshape(da, db * db) @ b.mult_float.reshape(db * db, db)
    return np.remainder(z, p).astype(np.int64)


def tensor_unit(a: StructConstAlgebra, b: StructConstAlgebra | None = None) -> np.ndarray:
    b = a if b is None else b
    return np.outer(a.unit, b.unit) % a.p


def is_cocommutative(h: HopfData) -> bool:
    return bool(np.array_equal(h.coproduct, h.coproduct.transpose(0, 2, 1)))


def check_hopf(h: HopfData) -> CheckReport:
    """Verify the Hopf algebra axioms.

    Multiplicativity of the coproduct and counit is checked on pairs
    ``(generator, basis element)``; together with ``Delta(1) = 1 (x) 1`` this
    implies it on all pairs, because the set of ``x`` with
    ``Delta(xy) = Delta(x)Delta(y)`` for all ``y`` is a subalgebra.
    """
    A, p, d = h.algebra, h.p, h.dim
    D, eps, S = h.coproduct, h.counit, h.antipode
    rep = CheckReport("hopf")
    left = contract(D, D, ([1], [0]), p)  # (k, j, x, y) = (Delta (x) id) Delta
    right = contract(D, D, ([2], [0]), p)  # (k, i, x, y) = (id (x) Delta) Delta
    rep.record("coassociative", np.array_equal(left.transpose(0, 2, 3, 1), right))
    eye = np.eye(d, dtype=np.int64)
    rep.record("counit_left", np.array_equal(contract(D, eps, ([1], [0]), p), eye))
    rep.record("counit_right", np.array_equal(contract(D, eps, ([2], [0]), p), eye))
    one = tensor_unit(A)
    rep.record("coproduct_unital", np.array_equal(h.delta(A.unit), one))
    rep.record("counit_unital", h.eps(A.unit) == 1)
    mult_ok = True
    eps_ok = True
    for g in h.check_generators():
        dg = h.delta(g)
        Lg = A.left_mult_matrix(g)
        eg = h.eps(g)
        for j in range(d):
            prod = Lg[:, j]
            if not np.array_equal(h.delta(prod), tensor_mult(A, dg, D[j])):
                mult_ok = False
                break
            if h.eps(prod) != (eg * eps[j]) % p:
                eps_ok = False
        if not mult_ok:
            break
    rep.record("coproduct_multiplicative", mult_ok)
    rep.record("counit_multiplicative", eps_ok)
    # m(S (x) id)Delta = u eps = m(id (x) S)Delta on every basis element
    target = np.outer(eps, A.unit) % p
    sl = contract(contract(D, S, ([1], [1]), p), A.mult, ([2, 1], [0, 1]), p)
    sr = contract(contract(D, S, ([2], [1]), p), A.mult, ([1, 2], [0, 1]), p)
    rep.record("antipode_left", np.array_equal(sl, target))
    rep.record("antipode_right", np.array_equal(sr, target))
    return rep


def dual_hopf(h: HopfData) -> HopfData:
    """The dual Hopf algebra in the dual basis."""
    p = h.p
    alg = StructConstAlgebra(p, h.coproduct.transpose(1, 2, 0), h.counit)
    return HopfData(alg, h.algebra.mult.transpose(2, 0, 1), h.algebra.unit.copy(), h.antipode.T.copy())


# ---------------------------------------------------------------------------
# U_0(g)


def pbw_extend(U: ReducedEnveloping, gen_images: np.ndarray, p: int) -> np.ndarray:
    """Extend generator matrices multiplicatively over the PBW basis of ``U``.

    ``out[s] = gen_images[k] @ out[s']`` where ``e^a = e_k e^(a - delta_k)``.
    """
    d = U.dim
    m = gen_images.shape[-1]
    out = np.zeros((d, m, m), dtype=np.int64)
    out[0] = np.eye(m, dtype=np.int64)
    n = U.lie.n
    weights = [p ** (n - 1 - i) for i in range(n)]
    for s in range(1, d):
        k = int(np.flatnonzero(U.exponents[s])[0])
        out[s] = fl.matmul(gen_images[k], out[s - weights[k]], p)
    return out


def u0_hopf(g: RestrictedLie, check: bool = True) -> tuple[HopfData, ReducedEnveloping]:
    """``U_0(g)`` with primitive generators; returns the Hopf data and the PBW algebra."""
    U = reduced_enveloping(g, None, check=check)
    A, p, d, n = U.algebra, g.p, U.dim, g.n
    weights = [p ** (n - 1 - i) for i in range(n)]
    cop = np.zeros((d, d, d), dtype=np.int64)
    cop[0] = np.outer(A.unit, A.unit)
    S = np.zeros((d, d), dtype=np.int64)
    S[:, 0] = A.unit
    gl = [A.left_mult_matrix(e) for e in U.generators]
    gr = [A.right_mult_matrix(e) for e in U.generators]
    for s in range(1, d):
        k = int(np.flatnonzero(U.exponents[s])[0])
        prev = s - weights[k]
        C = cop[prev]
        cop[s] = (fl.matmul(gl[k], C, p) + fl.matmul(C, gl[k].T, p)) % p
        S[:, s] = (-fl.matmul(gr[k], S[:, prev], p)) % p
    eps = np.zeros(d, dtype=np.int64)
    eps[0] = 1
    names = [U.monomial_name(s) for s in range(d)]
    H = HopfData(A, cop, eps, S, generators=U.generators.copy(), names=names)
    if check:
        check_hopf(H).require()
        if not is_cocommutative(H):
            raise ArithmeticError("U_0(g) came out non-cocommutative")
    return H, U


# ---------------------------------------------------------------------------
# integrals, modular function, grouplikes


def left_integral(h: HopfData) -> np.ndarray:
    """Basis vector of ``{x : b x = eps(b) x for all b}``."""
    p, d = h.p, h.dim
    A = h.algebra
    constraints = [
        (lambda K, M=np.remainder(A.left_mult[i] - h.counit[i] * np.eye(d, dtype=np.int64), p): fl.matmul(K, M.T, p))
        for i in range(d)
    ]
    K = fl.common_kernel(constraints, p, d)
    if K.shape[0] != 1:
        raise IntegralSpaceDimensionError(f"integral space has dimension {K.shape[0]}")
    return K[0]


def modular_function(h: HopfData, x: np.ndarray) -> np.ndarray:
    """``alpha`` with ``x b = alpha(b) x``; verified to be an algebra map."""
    p, A = h.p, h.algebra
    pos = int(np.flatnonzero(x)[0])
    inv = fl.inv_mod(int(x[pos]), p)
    alpha = np.zeros(h.dim, dtype=np.int64)
    for i in range(h.dim):
        y = A.right_mult[i] @ x % p
        a = (int(y[pos]) * inv) % p
        if not np.array_equal(y, (a * x) % p):
            raise ArithmeticError("x b is not proportional to x")
        alpha[i] = a
    prod = contract(A.mult, alpha, ([2], [0]), p)
    if not np.array_equal(prod, np.outer(alpha, alpha) % p) or int(alpha @ A.unit % p) != 1:
        raise ArithmeticError("modular function is not an algebra map")
    return alpha


def convolve(h: HopfData, f, g) -> np.ndarray:
    """Product in the dual algebra: ``(f*g)(b_k) = sum cop[k,i,j] f_i g_j``."""
    p = h.p
    return contract(contract(h.coproduct, fl.reduce(f, p), ([1], [0]), p), fl.reduce(g, p), ([1], [0]), p)


def convolution_order(h: HopfData, f, cap: int) -> int:
    cur = fl.reduce(f, h.p)
    for k in range(1, cap + 1):
        if np.array_equal(cur, h.counit):
            return k
        cur = convolve(h, cur, f)
    raise ArithmeticError("order exceeds cap")


def grouplikes(h: HopfData, action: np.ndarray | None = None, target: StructConstAlgebra | None = None,
               gate: int = GROUPLIKE_GATE) -> list[np.ndarray]:
    """All grouplike elements by exhaustive search.

    When ``action`` (operators on ``target``) is given, each grouplike is
    cross-checked to act as an algebra automorphism of ``target``.

    Raises:
        SizeGateError: ``p**d`` exceeds ``gate``.
    """
    p, d = h.p, h.dim
    if p**d > gate:
        raise SizeGateError(f"p^d = {p}^{d} exceeds the enumeration gate")
    D = h.coproduct.reshape(d, d * d).astype(np.float64)
    found = []
    chunk = 1 << 14
    total = p**d
    digits = np.array([p ** (d - 1 - i) for i in range(d)], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        G = (idx[:, None] // digits[None, :]) % p
        G = G[(G @ h.counit) % p == 1]
        if G.size == 0:
            continue
        dg = np.remainder(G.astype(np.float64) @ D, p).astype(np.int64)
        outer = (G[:, :, None] * G[:, None, :]).reshape(len(G), -1) % p
        hits = np.flatnonzero(np.all(dg == outer, axis=1))
        found.extend(G[i].copy() for i in hits)
    if found and fl.rank(np.array(found), p) != len(found):
        raise ArithmeticError("grouplikes are linearly dependent")
    if action is not None and target is not None:
        for gvec in found:
            op = np.remainder(np.tensordot(gvec, action, axes=([0], [0])), p)
            if not is_algebra_automorphism(op, target):
                raise ArithmeticError("grouplike does not act as an automorphism")
    return found


def is_algebra_automorphism(op: np.ndarray, A: StructConstAlgebra) -> bool:
    p = A.p
    if fl.rank(op, p) != A.dim:
        return False
    lhs = contract(A.mult, op, ([2], [1]), p)  # op(b_i b_j) as (i, j, :)
    img = op.T  # rows: op(b_i)
    rhs = contract(contract(img, A.mult, ([1], [0]), p), img, ([1], [1]), p)  # (i, k, j)
    return bool(np.array_equal(lhs, rhs.transpose(0, 2, 1)))


# ---------------------------------------------------------------------------
# quasitriangular structures


def check_quasitriangular(h: HopfData, R: np.ndarray) -> CheckReport:
    """Axioms of a quasitriangular structure plus rank and triangularity."""
    A, p = h.algebra, h.p
    R = fl.reduce(R, p)
    D = h.coproduct
    rep = CheckReport("quasitriangular")
    ok = True
    for g in h.check_generators():
        dg = h.delta(g)
        if not np.array_equal(tensor_mult(A, dg.T, R), tensor_mult(A, R, dg)):
            ok = False
            break
    rep.record("intertwines_coproduct", ok)
    rep.record("counit_left", np.array_equal(h.counit @ R % p, A.unit))
    rep.record("counit_right", np.array_equal(R @ h.counit % p, A.unit))
    lhs = contract(R, D, ([0], [0]), p)  # (j, x, y)
    t = contract(R, A.mult, ([1], [0]), p)  # (i, l, u)
    r13r23 = contract(t, R, ([1], [1]), p).transpose(0, 2, 1)  # (i, k, u)
    rep.record("coproduct_first_leg", np.array_equal(lhs.transpose(1, 2, 0), r13r23))
    lhs2 = contract(R, D, ([1], [0]), p)  # (i, x, y)
    t2 = contract(R, A.mult, ([0], [0]), p)  # (j, k, s)
    r13r12 = contract(t2, R, ([1], [0]), p).transpose(1, 2, 0)  # (s, l, j)
    rep.record("coproduct_second_leg", np.array_equal(lhs2, r13r12))
    left_rank = fl.Subspace.span(R.T, p, h.dim).dim if R.any() else 0
    right_rank = fl.Subspace.span(R, p, h.dim).dim if R.any() else 0
    rep.record("leg_ranks_agree", left_rank == right_rank)
    rep.details["rank"] = left_rank
    rep.details["triangular"] = bool(np.array_equal(tensor_mult(A, R.T, R), tensor_unit(A)))
    return rep


def rank_of(R: np.ndarray, p: int) -> int:
    return fl.rank(R, p)


def is_triangular(h: HopfData, R: np.ndarray) -> bool:
    return bool(np.array_equal(tensor_mult(h.algebra, fl.reduce(R, h.p).T, R), tensor_unit(h.algebra)))


def drinfeld_element(h: HopfData, R: np.ndarray) -> np.ndarray:
    """``u = sum S(r'') r'``."""
    p = h.p
    t = contract(R, h.antipode, ([1], [1]), p)  # (i, row of S(b_j) summed) -> (i, c)
    return contract(t, h.algebra.mult, ([1, 0], [0, 1]), p)


def grouplike_from_character(R: np.ndarray, alpha: np.ndarray, p: int) -> np.ndarray:
    """``g_alpha = sum alpha(r') r''``."""
    return fl.reduce(alpha, p) @ fl.reduce(R, p) % p


# ---------------------------------------------------------------------------
# module algebras


@dataclass(eq=False)
class ModuleAlgebraAction:
    """``H`` acting on the algebra ``A``; ``action[i]`` is the operator of ``b_i``."""

    hopf: HopfData
    algebra: StructConstAlgebra
    action: np.ndarray
    gen_action: np.ndarray | None = field(default=None)

    def __post_init__(self):
        self.action = fl.reduce(self.action, self.algebra.p)
        if self.gen_action is None:
            gens = self.hopf.check_generators()
            self.gen_action = np.remainder(np.tensordot(gens, self.action, axes=([0], [0])), self.algebra.p)

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, h) -> np.ndarray:
        return np.remainder(np.tensordot(fl.reduce(h, self.p), self.action, axes=([0], [0])), self.p)


def check_module_algebra(act: ModuleAlgebraAction) -> CheckReport:
    H, A, p = act.hopf, act.algebra, act.p
    rep = CheckReport("module_algebra")
    gens = H.check_generators()
    ok = True
    for g, Ag in zip(gens, act.gen_action):
        prod = contract(H.algebra.left_mult_matrix(g), act.action, ([0], [0]), p)
        # act(g b_j) for every j, compared with act(g) act(b_j)
        comp = np.einsum("ab,jbc->jac", Ag, act.action) % p
        if not np.array_equal(prod.transpose(0, 1, 2), comp):
            ok = False
            break
    rep.record("representation", ok)
    rep.record("unit_acts_trivially", np.array_equal(act.act(H.algebra.unit), np.eye(A.dim, dtype=np.int64)))
    ok = True
    unit_ok = True
    for g, Ag in zip(gens, act.gen_action):
        lhs = contract(A.mult, Ag, ([2], [1]), p)  # g(b_a b_b) as (a, b, :)
        dg = H.delta(g)
        rhs = np.zeros_like(lhs)
        for x, y in zip(*np.nonzero(dg)):
            Px = act.action[x].T  # rows: x b_a
            Py = act.action[y].T
            t = contract(Px, A.mult, ([1], [0]), p)  # (a, j, k)
            rhs = (rhs + dg[x, y] * contract(t, Py, ([1], [1]), p).transpose(0, 2, 1)) % p
        ok &= np.array_equal(lhs, rhs)
        unit_ok &= np.array_equal(Ag @ A.unit % p, (H.eps(g) * A.unit) % p)
    rep.record("multiplication_equivariant", ok)
    rep.record("unit_equivariant", unit_ok)
    return rep


def invariants(gen_action: np.ndarray, gen_counit, p: int) -> fl.Subspace:
    """``{v : g v = eps(g) v}`` for the given generator operators."""
    m = gen_action.shape[-1]
    eye = np.eye(m, dtype=np.int64)
    constraints = [
        (lambda K, M=np.remainder(G - int(e) * eye, p): fl.matmul(K, M.T, p))
        for G, e in zip(gen_action, gen_counit)
    ]
    return fl.Subspace.span(fl.common_kernel(constraints, p, m), p, m)


def hom_H(src: np.ndarray, dst: np.ndarray, p: int) -> np.ndarray:
    """Intertwiners ``T`` with ``T src[g] = dst[g] T`` for all generators.

    Args:
        src: generator operators on V, shape ``(g, m_V, m_V)``.
        dst: generator operators on W, shape ``(g, m_W, m_W)``.

    Returns:
        Basis of intertwiners, shape ``(k, m_W, m_V)``, in reduced echelon
        order of their row-major vectorizations.
    """
    mv, mw = src.shape[-1], dst.shape[-1]

    def make(Sg, Dg):
        def apply(K):
            T = K.reshape(-1, mw, mv).astype(np.float64)
            out = T @ Sg.astype(np.float64) - Dg.astype(np.float64) @ T
            return np.remainder(out, p).astype(np.int64).reshape(K.shape[0], -1)
        return apply

    K = fl.common_kernel([make(s, t) for s, t in zip(src, dst)], p, mv * mw)
    return K.reshape(-1, mw, mv)


def adjoint_module(H: HopfData, U: ReducedEnveloping, A: StructConstAlgebra, gen_mats: np.ndarray) -> ModuleAlgebraAction:
    """Module algebra whose generator operators are ``gen_mats`` (PBW-extended)."""
    full = pbw_extend(U, gen_mats, H.p)
    return ModuleAlgebraAction(H, A, full, gen_action=fl.reduce(gen_mats, H.p))

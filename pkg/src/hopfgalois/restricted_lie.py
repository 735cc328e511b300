"""Restricted Lie algebras over F_p and their reduced enveloping algebras.

A restricted Lie algebra is stored by its bracket tensor
``bracket[i, j, l]`` (``[e_i, e_j] = sum_l bracket[i, j, l] e_l``) and the
values of the p-map on basis vectors, ``pmap[i] = e_i^[p]``.  The p-map on an
arbitrary element is obtained from Jacobson's formula by adding basis
components one at a time.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field

import numpy as np

from . import fp_linalg as fl
from .checks import CheckReport
from .structconst_algebra import StructConstAlgebra

EXHAUSTIVE_GATE = 2**20
SAMPLED_PAIRS = 10_000


@dataclass(frozen=True, eq=False)
class RestrictedLie:
    p: int
    bracket: np.ndarray
    pmap: np.ndarray
    names: tuple[str, ...] = ()

    def __post_init__(self):
        p = fl.check_prime(self.p)
        object.__setattr__(self, "p", p)
        n = np.asarray(self.pmap).shape[0]
        br = fl.reduce(self.bracket, p).reshape(n, n, n)
        object.__setattr__(self, "bracket", br)
        object.__setattr__(self, "pmap", fl.reduce(self.pmap, p).reshape(n, n))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return self.pmap.shape[0]

    @classmethod
    def from_brackets(cls, p: int, n: int, brackets: dict, pmap, names=()) -> "RestrictedLie":
        """Build from ``{(i, j): coeffs}`` for ``i < j``; antisymmetry is filled in."""
        br = np.zeros((n, n, n), dtype=np.int64)
        for (i, j), coeffs in brackets.items():
            if not i < j:
                raise ValueError(f"bracket entry ({i}, {j}) must have i < j")
            br[i, j] = coeffs
            br[j, i] = -np.asarray(coeffs, dtype=np.int64)
        return cls(p, br, np.asarray(pmap, dtype=np.int64).reshape(n, n), tuple(names))

    @classmethod
    def from_matrices(cls, p: int, mats, names=()) -> "RestrictedLie":
        """Linear Lie algebra spanned by matrices, with p-map the matrix p-th power."""
        mats = [fl.reduce(m, p) for m in mats]
        n = len(mats)
        flat = np.array([m.reshape(-1) for m in mats])
        span = fl.Subspace.span(flat, p)
        if span.dim != n:
            raise ValueError("matrices are linearly dependent")

        def coords(m):
            return fl.solve(flat.T, fl.reduce(m, p).reshape(-1), p)

        br = np.zeros((n, n, n), dtype=np.int64)
        for i, j in itertools.product(range(n), repeat=2):
            c = fl.matmul(mats[i], mats[j], p) - fl.matmul(mats[j], mats[i], p)
            if not span.contains(fl.reduce(c.reshape(-1), p)):
                raise ValueError("span is not closed under the commutator")
            br[i, j] = coords(c)
        pm = np.array([coords(fl.matpow(m, p, p)) for m in mats])
        return cls(p, br, pm, tuple(names))

    # -- elementwise operations (batched over leading axes) ----------------

    def ad(self, i: int) -> np.ndarray:
        """Matrix of ``ad e_i``: column j holds ``[e_i, e_j]``."""
        return np.ascontiguousarray(self.bracket[i].T)

    def ad_of(self, x) -> np.ndarray:
        return np.remainder(np.tensordot(fl.reduce(x, self.p), self.bracket, axes=([0], [0])).T, self.p)

    def lie_bracket(self, x, y) -> np.ndarray:
        return np.remainder(np.einsum("...i,...j,ijl->...l", x, y, self.bracket), self.p)

    def jacobson_terms(self, x, y) -> np.ndarray:
        """``sum_i s_i(x, y)`` where ``i s_i`` is the t^(i-1) coefficient of ad(tx+y)^(p-1)(x)."""
        p = self.p
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        coeffs = [x]
        for _ in range(p - 1):
            new = [self.lie_bracket(y, c) for c in coeffs] + [np.zeros_like(x)]
            for k in range(1, len(new)):
                new[k] = np.remainder(new[k] + self.lie_bracket(x, coeffs[k - 1]), p)
            coeffs = new
        total = np.zeros_like(x)
        for i in range(1, p):
            total = total + coeffs[i - 1] * pow(i, -1, p)
        return np.remainder(total, p)

    def pmap_of(self, x) -> np.ndarray:
        """p-map of arbitrary elements, built coordinate by coordinate."""
        p = self.p
        x = fl.reduce(x, p)
        out = np.zeros_like(x)
        acc = np.zeros_like(x)
        for k in range(self.n):
            c = x[..., k]
            y = np.zeros_like(x)
            y[..., k] = c
            # c^p = c in F_p
            out = out + c[..., None] * self.pmap[k] + self.jacobson_terms(acc, y)
            acc = acc + y
        return np.remainder(out, p)

    def elements(self) -> np.ndarray:
        """All ``p^n`` elements (only sensible for small spaces)."""
        return np.array(list(itertools.product(range(self.p), repeat=self.n)), dtype=np.int64).reshape(self.p**self.n, self.n)


def _pairs(g: RestrictedLie, rng):
    total = g.p ** (2 * g.n)
    if total <= EXHAUSTIVE_GATE:
        elems = g.elements()
        xs = np.repeat(elems, len(elems), axis=0)
        ys = np.tile(elems, (len(elems), 1))
        return xs, ys, True
    xs = rng.integers(0, g.p, (SAMPLED_PAIRS, g.n))
    ys = rng.integers(0, g.p, (SAMPLED_PAIRS, g.n))
    return xs, ys, False


def check_restricted(g: RestrictedLie, seed: int = 0) -> CheckReport:
    """Verify the restricted Lie algebra axioms on the given data."""
    p, n = g.p, g.n
    rep = CheckReport("restricted_lie")
    br = g.bracket
    rep.record("alternating", not np.remainder(br + br.transpose(1, 0, 2), p).any()
               and not br[np.arange(n), np.arange(n)].any())
    # [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
    inner = br  # (j, k, m)
    t1 = np.einsum("jkm,iml->ijkl", inner, br)
    jac = t1 + t1.transpose(1, 2, 0, 3) + t1.transpose(2, 0, 1, 3)
    rep.record("jacobi", not np.remainder(jac, p).any())
    ad_ok = all(
        np.array_equal(fl.matpow(g.ad(i), p, p), g.ad_of(g.pmap[i])) for i in range(n)
    )
    rep.record("ad_of_pmap", ad_ok)
    rng = np.random.default_rng(seed)
    xs, ys, exhaustive = _pairs(g, rng)
    if n:
        lhs = g.pmap_of(np.remainder(xs + ys, p))
        rhs = np.remainder(g.pmap_of(xs) + g.pmap_of(ys) + g.jacobson_terms(xs, ys), p)
        rep.record("jacobson_additivity", np.array_equal(lhs, rhs),
                   {"pairs": int(len(xs)), "exhaustive": exhaustive})
        cs = rng.integers(0, p, len(xs))
        scaled = g.pmap_of(np.remainder(cs[:, None] * xs, p))
        rep.record("p_semilinear", np.array_equal(scaled, np.remainder(cs[:, None] * g.pmap_of(xs), p)))
    else:
        rep.record("jacobson_additivity", True, {"pairs": 0, "exhaustive": True})
        rep.record("p_semilinear", True)
    return rep


def beta_form(g: RestrictedLie, xi) -> tuple[np.ndarray, bool]:
    """Matrix of ``beta(x, y) = xi([x, y])`` and whether it is nondegenerate."""
    xi = fl.reduce(xi, g.p)
    beta = np.remainder(g.bracket @ xi, g.p)
    return beta, fl.rank(beta, g.p) == g.n


def modular_character(g: RestrictedLie) -> np.ndarray:
    """``alpha(e_i) = tr(ad e_i)``."""
    return np.array([int(np.trace(g.ad(i))) % g.p for i in range(g.n)], dtype=np.int64)


def is_unimodular(g: RestrictedLie) -> bool:
    return not modular_character(g).any()


def derived_subalgebra(g: RestrictedLie) -> fl.Subspace:
    return fl.Subspace.span(g.bracket.reshape(g.n * g.n, g.n), g.p, g.n)


def derived_pnilpotent(g: RestrictedLie, seed: int = 0) -> bool:
    """Whether every element of ``[g, g]`` is killed by ``n`` iterations of the p-map."""
    der = derived_subalgebra(g)
    if der.dim == 0:
        return True
    p = g.p
    if p**der.dim <= EXHAUSTIVE_GATE:
        coeffs = np.array(list(itertools.product(range(p), repeat=der.dim)), dtype=np.int64)
    else:
        coeffs = np.random.default_rng(seed).integers(0, p, (SAMPLED_PAIRS, der.dim))
    xs = fl.matmul(coeffs, der.basis, p)
    for _ in range(g.n):
        xs = g.pmap_of(xs)
    return not xs.any()


# ---------------------------------------------------------------------------
# reduced enveloping algebras


@dataclass(eq=False)
class ReducedEnveloping:
    """``U_xi(g)`` in the PBW basis of ordered monomials ``e^a``.

    Basis slot ``s`` holds the exponent tuple ``exponents[s]``; tuples are in
    lexicographic order, so ``s = sum_i a_i p^(n-1-i)``.
    """

    lie: RestrictedLie
    xi: np.ndarray
    algebra: StructConstAlgebra
    exponents: np.ndarray
    generators: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def element(self, x) -> np.ndarray:
        """Image of a Lie algebra element (coordinate vector) in U."""
        return fl.matmul(fl.reduce(x, self.lie.p), self.generators, self.lie.p)

    def monomial_name(self, s: int) -> str:
        parts = []
        for name, a in zip(self.lie.names, self.exponents[s]):
            if a == 1:
                parts.append(name)
            elif a > 1:
                parts.append(f"{name}^{a}")
        return "*".join(parts) if parts else "1"


class _Straightener:
    """Left multiplication of PBW monomials by generators, memoized."""

    def __init__(self, g: RestrictedLie, xi: np.ndarray):
        self.g = g
        self.p = g.p
        self.n = g.n
        self.d = self.p**self.n
        self.xi_p = np.array([pow(int(v), self.p, self.p) for v in xi], dtype=np.int64)
        self.weights = np.array([self.p ** (self.n - 1 - i) for i in range(self.n)], dtype=np.int64)
        self.exps = np.array(list(itertools.product(range(self.p), repeat=self.n)), dtype=np.int64).reshape(self.d, self.n)
        self.cols: dict[tuple[int, int], np.ndarray] = {}

    def times(self, i: int, idx: int) -> np.ndarray:
        """Coordinates of ``e_i * e^a`` where ``a = exps[idx]``."""
        key = (i, idx)
        hit = self.cols.get(key)
        if hit is not None:
            return hit
        p, a = self.p, self.exps[idx]
        nz = np.flatnonzero(a)
        j = int(nz[0]) if nz.size else self.n
        out = np.zeros(self.d, dtype=np.int64)
        if j >= i:
            if a[i] < p - 1:
                out[idx + self.weights[i]] = 1
            else:
                # e_i^p = e_i^[p] + xi(e_i)^p
                tail = idx - (p - 1) * self.weights[i]
                out[tail] = self.xi_p[i]
                for l in np.flatnonzero(self.g.pmap[i]):
                    out += self.g.pmap[i, l] * self.times(int(l), tail)
        else:
            # e_i e_j (...) = e_j e_i (...) + [e_i, e_j] (...)
            b = idx - self.weights[j]
            inner = self.times(i, b)
            for t in np.flatnonzero(inner):
                out += inner[t] * self.times(j, int(t))
            for l in np.flatnonzero(self.g.bracket[i, j]):
                out += self.g.bracket[i, j, l] * self.times(int(l), b)
        out %= p
        self.cols[key] = out
        return out

    def generator_matrices(self) -> np.ndarray:
        G = np.zeros((self.n, self.d, self.d), dtype=np.int64)
        for i in range(self.n):
            for idx in range(self.d):
                G[i][:, idx] = self.times(i, idx)
        return G


def reduced_enveloping(g: RestrictedLie, xi=None, check: bool = True) -> ReducedEnveloping:
    """Construct ``U_xi(g)`` by PBW straightening.

    Args:
        g: restricted Lie algebra (validated when ``check``).
        xi: linear form as a coordinate vector (default 0).
        check: verify the restricted axioms and the defining relations.
    """
    p, n = g.p, g.n
    xi = np.zeros(n, dtype=np.int64) if xi is None else fl.reduce(xi, p)
    if xi.shape != (n,):
        raise ValueError(f"xi must have length {n}")
    if check:
        check_restricted(g).require()
    st = _Straightener(g, xi)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10_000))
    try:
        G = st.generator_matrices()
    finally:
        sys.setrecursionlimit(old)
    d = st.d
    lefts = np.zeros((d, d, d), dtype=np.int64)
    lefts[0] = np.eye(d, dtype=np.int64)
    for s in range(1, d):
        k = int(np.flatnonzero(st.exps[s])[0])
        lefts[s] = fl.matmul(G[k], lefts[s - st.weights[k]], p)
    mult = np.ascontiguousarray(lefts.transpose(0, 2, 1))
    unit = np.zeros(d, dtype=np.int64)
    unit[0] = 1
    algebra = StructConstAlgebra(p, mult, unit, check=check)
    gens = np.zeros((n, d), dtype=np.int64)
    for i in range(n):
        gens[i, st.weights[i]] = 1
    U = ReducedEnveloping(g, xi, algebra, st.exps, gens)
    if check:
        verify_enveloping(U).require()
    return U


def verify_enveloping(U: ReducedEnveloping) -> CheckReport:
    g, A, p = U.lie, U.algebra, U.lie.p
    rep = CheckReport("reduced_enveloping")
    rep.record("dimension", A.dim == p**g.n)
    ok = True
    for i, j in itertools.product(range(g.n), repeat=2):
        comm = A.multiply(U.generators[i], U.generators[j]) - A.multiply(U.generators[j], U.generators[i])
        ok &= np.array_equal(np.remainder(comm, p), U.element(g.bracket[i, j]))
    rep.record("commutator_is_bracket", ok)
    ok = True
    for i in range(g.n):
        lhs = A.power(U.generators[i], p)
        rhs = np.remainder(U.element(g.pmap[i]) + pow(int(U.xi[i]), p, p) * A.unit, p)
        ok &= np.array_equal(lhs, rhs)
    rep.record("pth_power_relation", ok)
    return rep


def adjoint_action(U: ReducedEnveloping, check: bool = True) -> np.ndarray:
    """``rho(e_i) = L_{e_i} - R_{e_i}`` on ``U``, shape ``(n, d, d)``."""
    A, p, g = U.algebra, U.lie.p, U.lie
    mats = np.array(
        [np.remainder(A.left_mult_matrix(e) - A.right_mult_matrix(e), p) for e in U.generators]
    ).reshape(g.n, A.dim, A.dim)
    if check:
        for i in range(g.n):
            target = np.remainder(np.tensordot(g.pmap[i], mats, axes=([0], [0])), p)
            if not np.array_equal(fl.matpow(mats[i], p, p), target):
                raise ArithmeticError(f"adjoint action of e{i} is not restricted")
    return mats


def module_relations(g: RestrictedLie, mats, xi=None) -> CheckReport:
    """Whether matrices for the basis of ``g`` define a ``U_xi(g)``-module.

    Checks ``[rho(e_i), rho(e_j)] = rho([e_i, e_j])`` and
    ``rho(e_i)^p - rho(e_i^[p]) = xi(e_i)^p``.
    """
    p = g.p
    mats = fl.reduce(mats, p)
    xi = np.zeros(g.n, dtype=np.int64) if xi is None else fl.reduce(xi, p)
    eye = np.eye(mats.shape[-1], dtype=np.int64)
    rep = CheckReport("module_relations")
    ok = True
    for i, j in itertools.product(range(g.n), repeat=2):
        comm = fl.matmul(mats[i], mats[j], p) - fl.matmul(mats[j], mats[i], p)
        ok &= np.array_equal(np.remainder(comm, p), np.remainder(np.tensordot(g.bracket[i, j], mats, axes=([0], [0])), p))
    rep.record("bracket", ok)
    ok = True
    for i in range(g.n):
        rhs = np.tensordot(g.pmap[i], mats, axes=([0], [0])) + pow(int(xi[i]), p, p) * eye
        ok &= np.array_equal(fl.matpow(mats[i], p, p), np.remainder(rhs, p))
    rep.record("pth_powers", ok)
    return rep


def frobenius_trace(g: RestrictedLie, xi) -> dict | None:
    """For nondegenerate ``beta_xi``: the ``x`` with ``xi o ad x = xi`` and its trace.

    Grouping the generalized eigenspaces of ``ad x`` in pairs ``(l, 1 - l)``
    forces ``tr(ad x) = (dim g / 2) * 1``; when ``g`` is unimodular this
    gives ``dim g = 0 mod 2p``.  Returns ``None`` for degenerate ``beta_xi``.
    """
    p = g.p
    beta, nondegenerate = beta_form(g, xi)
    if not nondegenerate:
        return None
    x = fl.solve(beta.T, fl.reduce(xi, p), p)
    trace = int(np.trace(g.ad_of(x))) % p
    half = (g.n // 2) % p
    return {
        "x": x.tolist(),
        "trace_ad_x": trace,
        "trace_is_half_dim": g.n % 2 == 0 and trace == half,
        "congruence_if_unimodular": (not is_unimodular(g)) or g.n % (2 * p) == 0,
    }

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgalois import _kernels_py, fp_linalg as fl

try:
    from hopfgalois import _kernels as compiled
except ImportError:  # extension not built in this environment
    compiled = None

primes = st.sampled_from([2, 3, 5, 7, 251])


@st.composite
def matrices(draw, max_rows=9, max_cols=9):
    p = draw(primes)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return p, rng.integers(0, p, (r, c))


def brute_rank(m, p):
    """Row reduction with python ints, one pivot at a time."""
    m = [list(map(int, row)) for row in m]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] % p:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_brute_force(pm):
    p, m = pm
    assert fl.rank(m, p) == brute_rank(m, p)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_reduced_and_row_equivalent(pm):
    p, m = pm
    R, piv = fl.rref(m, p)
    r = len(piv)
    assert not R[r:].any()
    for k, c in enumerate(piv):
        col = np.zeros(len(R), dtype=np.int64)
        col[k] = 1
        assert np.array_equal(R[:, c], col)
    assert fl.Subspace.span(R[:r], p, m.shape[1]) == fl.Subspace.span(m, p)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_basis_is_a_basis_of_the_null_space(pm):
    p, m = pm
    K = fl.kernel_basis(m, p)
    assert K.shape == (m.shape[1] - fl.rank(m, p), m.shape[1])
    if K.size:
        assert not fl.matmul(m, K.T, p).any()
        assert fl.rank(K, p) == K.shape[0]


@settings(max_examples=60, deadline=None)
@given(primes, st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_solve_and_inverse(p, n, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, (n, n))
    x = rng.integers(0, p, n)
    b = fl.matmul(a, x, p)
    y = fl.solve(a, b, p)
    assert np.array_equal(fl.matmul(a, y, p), b)
    if fl.rank(a, p) == n:
        assert np.array_equal(y, x)
        assert np.array_equal(fl.matmul(fl.inverse(a, p), a, p), np.eye(n, dtype=np.int64))


def test_solve_reports_inconsistent_systems():
    a = np.array([[1, 1], [1, 1]])
    with pytest.raises(fl.NoSolutionError):
        fl.solve(a, np.array([0, 1]), 3)


def test_singular_inverse_raises():
    with pytest.raises(fl.SingularMatrixError):
        fl.inverse(np.array([[1, 2], [2, 4]]), 5)


@pytest.mark.parametrize("p,ok", [(2, True), (3, True), (4, False), (1, False), (251, True), (257, False)])
def test_prime_validation(p, ok):
    if ok:
        assert fl.check_prime(p) == p
    else:
        with pytest.raises(ValueError):
            fl.check_prime(p)


@pytest.mark.parametrize("p", [2, 3, 7])
def test_large_products_stay_exact(p):
    # 600 columns of (p-1)^2 terms would overflow float32; check against python ints
    rng = np.random.default_rng(p)
    a = rng.integers(0, p, (5, 600))
    b = rng.integers(0, p, (600, 4))
    exact = (a.astype(object) @ b.astype(object)) % p
    assert np.array_equal(fl.matmul(a, b, p), exact.astype(np.int64))


def test_wide_elimination_crosses_panels():
    p = 3
    rng = np.random.default_rng(5)
    n = 3 * fl.PANEL + 7
    m = (rng.integers(0, p, (n, n - 9)) @ rng.integers(0, p, (n - 9, n))) % p
    assert fl.rank(m, p) == brute_rank(m, p)


def test_matpow_and_inv_mod():
    m = np.array([[1, 1], [0, 1]])
    assert np.array_equal(fl.matpow(m, 5, 5), np.eye(2, dtype=np.int64))
    assert all((a * fl.inv_mod(a, 7)) % 7 == 1 for a in range(1, 7))


def test_subspace_membership_and_empty_span():
    V = fl.Subspace.span([[1, 1, 0], [0, 1, 1]], 2)
    assert V.dim == 2
    assert V.contains(np.array([1, 0, 1]))
    assert not V.contains(np.array([1, 0, 0]))
    assert fl.Subspace.span(np.zeros((0, 3), dtype=np.int64), 2, 3).dim == 0


def test_common_kernel_intersects_constraints():
    p = 5
    c1 = np.array([[1, 0, 0, 0]])
    c2 = np.array([[0, 1, 1, 0]])
    K = fl.common_kernel([lambda X: X @ c1.T, lambda X: X @ c2.T], p, 4)
    assert K.shape[0] == 2
    assert not ((K @ c1.T) % p).any() and not ((K @ c2.T) % p).any()


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
@settings(max_examples=40, deadline=None)
@given(primes, st.integers(1, 200), st.integers(0, 2**32 - 1))
def test_backends_agree_on_panel_factorization(p, rows, seed):
    P = np.random.default_rng(seed).integers(0, p, (rows, min(rows, fl.PANEL)))
    a = _kernels_py.factor_panel(P.copy(), p)
    b = compiled.factor_panel(P.copy(), p)
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
def test_backends_agree_on_rref(monkeypatch):
    p = 5
    m = np.random.default_rng(1).integers(0, p, (150, 170))
    monkeypatch.setattr(fl, "_kernels", _kernels_py)
    slow = fl.rref(m, p)
    monkeypatch.setattr(fl, "_kernels", compiled)
    fast = fl.rref(m, p)
    assert np.array_equal(slow[0], fast[0]) and slow[1] == fast[1]

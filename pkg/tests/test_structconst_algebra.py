from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfgalois import structconst_algebra as sa


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3), (5, 1)])
def test_matrix_algebra_is_central_simple(p, n):
    M = sa.matrix_algebra(p, n)
    assert M.is_central_simple()
    assert M.center().dim == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_truncated_polynomials_are_commutative_not_central_simple(p):
    T = sa.truncated_polynomial(p)
    assert T.is_commutative()
    assert T.center().dim == p
    assert not T.is_central_simple()


def test_opposite_of_matrix_algebra_reverses_products():
    M = sa.matrix_algebra(3, 2)
    x, y = M.basis_vector(1), M.basis_vector(2)
    assert np.array_equal(M.opposite().multiply(x, y), M.multiply(y, x))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**32 - 1))
def test_units_of_matrix_algebra_invert(p, seed):
    M = sa.matrix_algebra(p, 2)
    x = np.random.default_rng(seed).integers(0, p, 4)
    det = (x[0] * x[3] - x[1] * x[2]) % p
    if det:
        y = M.element_inverse(x)
        assert np.array_equal(M.multiply(x, y), M.unit)
    else:
        with pytest.raises(sa.NotInvertibleError):
            M.element_inverse(x)


def test_tensor_product_dimension_and_unit():
    A = sa.tensor_algebra(sa.matrix_algebra(2, 2), sa.truncated_polynomial(2))
    assert A.dim == 8
    assert np.array_equal(A.multiply(A.unit, A.basis_vector(5)), A.basis_vector(5))
    with pytest.raises(ValueError):
        sa.tensor_algebra(sa.matrix_algebra(2, 2), sa.matrix_algebra(3, 2))


def test_trace_form_on_matrices_is_symmetric():
    p = 5
    M = sa.matrix_algebra(p, 2)
    trace = np.array([1, 0, 0, 1])
    fr = M.frobenius_data(trace)
    assert np.array_equal(fr.nakayama, np.eye(4, dtype=np.int64))
    assert fr.order == 1


def test_degenerate_form_is_rejected():
    with pytest.raises(sa.DegenerateFormError):
        sa.truncated_polynomial(3).frobenius_data([1, 0, 0])


def test_nonsymmetric_form_has_nontrivial_nakayama():
    # chi picks the (0,1) entry plus the trace: chi(ba) != chi(ab) in general
    M = sa.matrix_algebra(3, 2)
    fr = M.frobenius_data([1, 1, 0, 1])
    assert fr.order > 1
    for s in range(4):
        for t in range(4):
            a, b = M.basis_vector(s), M.basis_vector(t)
            lhs = M.multiply(b, a) @ fr.chi % 3
            rhs = M.multiply(a, fr.nakayama @ b % 3) @ fr.chi % 3
            assert lhs == rhs


def test_subalgebra_closure_of_a_generator():
    T = sa.truncated_polynomial(5)
    assert T.subalgebra_closure([T.basis_vector(1)]).dim == 5
    assert T.subalgebra_closure([T.basis_vector(3)]).dim == 2


def test_bad_shapes_and_axioms_raise():
    with pytest.raises(ValueError):
        sa.StructConstAlgebra(3, np.zeros((2, 3, 2)), [1, 0])
    with pytest.raises(sa.AxiomError):
        sa.StructConstAlgebra(3, np.zeros((2, 2, 2)), [1, 0])


def test_matrix_order_cap():
    m = np.array([[1, 1], [0, 1]])
    assert sa.matrix_order(m, 3, cap=3) == 3
    with pytest.raises(ArithmeticError):
        sa.matrix_order(m, 5, cap=3)

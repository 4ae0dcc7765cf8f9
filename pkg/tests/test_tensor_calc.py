from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from fnlift.lgeometry import standard_J, standard_canonical_field
from fnlift.polyring import parse_poly
from fnlift.tensor_calc import (
    Tensor13,
    VecField,
    VecForm1,
    VecForm2,
    apply,
    compose,
    coordinate_field,
    cyclic_sum,
    fn_bracket_11,
    fn_bracket_11_on_fields,
    fn_bracket_form_field,
    identity_form,
    interior_product,
    lie_bracket,
    lie_derivative,
    lie_derivative_form,
    potential,
)

from conftest import fields

ex, ey = coordinate_field(2, 0), coordinate_field(2, 1)
J = standard_J(1)
C = standard_canonical_field(1)
I2 = identity_form(2)


def V(*comps, dim=2):
    return VecField([parse_poly(c, dim) if isinstance(c, str) else c for c in comps], dim)


def form1(rows, dim=2):
    return VecForm1([[parse_poly(c, dim) for c in row] for row in rows])


S_F1 = V("y", "0")
S_Q1 = V("y", "-2*x*y^2")
GAMMA_Q1 = form1([["1", "0"], ["-4*x*y", "-1"]])


# -- Lie bracket --------------------------------------------------------------------------


def test_coordinate_fields_commute():
    assert lie_bracket(ex, ey).is_zero()


def test_canonical_field_scales_flat_spray():
    assert lie_bracket(C, S_F1) == S_F1


def test_bracket_with_q1_spray():
    assert lie_bracket(ey, S_Q1) == V("1", "-4*x*y")


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        lie_bracket(ex, coordinate_field(4, 0))


@settings(max_examples=25, deadline=None)
@given(fields(max_terms=3, max_exp=2), fields(max_terms=3, max_exp=2), fields(max_terms=3, max_exp=2))
def test_jacobi_identity(X, Y, Z):
    br = lie_bracket
    assert (br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))).is_zero()


# -- application and composition ------------------------------------------------------


def test_apply_examples():
    X = V("x*y", "y^2")
    assert apply(I2, X) == X
    assert apply(J, ex) == ey
    Om = VecForm2(np.array([[[0, "x"], ["-x", 0]], [[0, "y"], ["-y", 0]]], dtype=object))
    assert apply(Om, X, X).is_zero()


def test_apply_arity_mismatch():
    with pytest.raises(ValueError, match="arguments"):
        apply(J, ex, ey)


def test_compose_examples():
    assert compose(J, J).is_zero()
    F_flat = form1([["0", "1"], ["-1", "0"]])  # F dx = -dy, F dy = dx
    assert compose(F_flat, F_flat) == -I2
    B = VecForm2(np.array([[[0, "x"], ["-x", 0]], [[0, 1], [-1, 0]]], dtype=object))
    assert compose(I2, B) == B


def test_interior_product_examples():
    B = VecForm2(np.array([[[0, "x"], ["-x", 0]], [[0, 1], [-1, 0]]], dtype=object))
    assert interior_product(I2, B) == B * 2
    assert interior_product(J, VecForm2.zero(2)).is_zero()


# -- Lie derivatives of forms -------------------------------------------------------------


def test_lie_derivative_anchor_examples():
    assert lie_derivative_form(C, J) == -J
    assert lie_derivative_form(C, I2).is_zero()
    assert lie_derivative_form(C, GAMMA_Q1).is_zero()


def test_lie_derivative_rejects_fields():
    with pytest.raises(ValueError):
        lie_derivative_form(C, ex)


@settings(max_examples=20, deadline=None)
@given(fields(max_terms=2, max_exp=2), fields(max_terms=2, max_exp=2), fields(max_terms=2, max_exp=2))
def test_lie_derivative_is_a_derivation_over_apply(Z, X, Y):
    B = fn_bracket_11(GAMMA_Q1, form1([["x", "y"], ["1", "x*y"]]))
    lhs = lie_bracket(Z, apply(B, X, Y))
    rhs = apply(lie_derivative(Z, B), X, Y) + apply(B, lie_bracket(Z, X), Y) + apply(B, X, lie_bracket(Z, Y))
    assert lhs == rhs


# -- Frölicher-Nijenhuis brackets ------------------------------------------------------------


def test_fn_bracket_anchor_examples():
    assert fn_bracket_11(J, J).is_zero()
    assert fn_bracket_11(I2, I2).is_zero()
    h_flat = form1([["1", "0"], ["0", "0"]])
    assert fn_bracket_11(h_flat, h_flat).is_zero()


@settings(max_examples=20, deadline=None)
@given(fields(max_terms=2, max_exp=2), fields(max_terms=2, max_exp=2))
def test_fn_bracket_matches_field_formula(X, Y):
    K = form1([["x*y", "1"], ["y^2", "-x"]])
    L = form1([["0", "x"], ["1", "y"]])
    assert apply(fn_bracket_11(K, L), X, Y) == fn_bracket_11_on_fields(K, L, X, Y)


def test_fn_bracket_is_antisymmetric_and_symmetric_in_its_arguments():
    K = form1([["x*y", "1"], ["y^2", "-x"]])
    L = form1([["0", "x"], ["1", "y"]])
    KL = fn_bracket_11(K, L)
    assert KL.is_antisymmetric()
    assert KL == fn_bracket_11(L, K)


def test_bracket_of_form_and_field_examples():
    assert fn_bracket_form_field(J, S_F1) == form1([["1", "0"], ["0", "-1"]])
    assert fn_bracket_form_field(J, S_Q1) == GAMMA_Q1
    assert fn_bracket_form_field(J, V("0", "0")).is_zero()


def test_bracket_of_form_and_field_is_minus_lie_derivative():
    K = form1([["x*y", "1"], ["y^2", "-x"]])
    assert fn_bracket_form_field(K, S_Q1) == -lie_derivative(S_Q1, K)


# -- potentials and cyclic sums ---------------------------------------------------------------


def test_potential_examples():
    Om = VecForm2(np.array([[[0, "x"], ["-x", 0]], [[0, "y"], ["-y", 0]]], dtype=object))
    assert potential(Om, S_Q1) == apply(Om, S_Q1)
    assert potential(VecForm2.zero(2), S_Q1).is_zero()
    with pytest.raises(ValueError):
        potential(ex, S_Q1)


def test_cyclic_sum_of_cyclic_sum_is_three_times():
    rng = np.random.default_rng(0)
    A = Tensor13(rng.integers(-3, 4, size=(2, 2, 2, 2)).astype(object))
    assert cyclic_sum(cyclic_sum(A)) == cyclic_sum(A) * 3
    assert cyclic_sum(Tensor13.zero(2)).is_zero()


def test_scalar_multiples_and_division():
    assert (J * 4) / 2 == J * 2
    assert J * Fraction(1, 2) + J * Fraction(1, 2) == J

from fractions import Fraction

import numpy as np
import pytest

from fnlift.lgeometry import (
    ConnectionAxiomError,
    LStructureError,
    NotASprayError,
    conservative,
    is_homogeneous,
    is_semibasic,
    is_semispray,
    is_spray,
    is_strongly_flat,
    make_l_connection,
    standard_J,
    standard_canonical_field,
    standard_structure,
    strong_torsion,
    validate_l_structure,
)
from fnlift.polyring import Poly, parse_poly
from fnlift.tensor_calc import VecField, VecForm1, VecForm2, compose, identity_form, lie_derivative

base1 = standard_structure(1)
I2 = identity_form(2)


def V(*comps, dim=2):
    return VecField([parse_poly(c, dim) for c in comps], dim)


def form1(rows, dim=2):
    return VecForm1([[parse_poly(c, dim) for c in row] for row in rows])


S_F1 = V("y", "0")
S_Q1 = V("y", "-2*x*y^2")


@pytest.fixture(scope="module")
def conn_f1():
    return conservative(base1, S_F1)


@pytest.fixture(scope="module")
def conn_q1():
    return conservative(base1, S_Q1)


# -- L-structures ---------------------------------------------------------------------------


def test_natural_structures_validate():
    assert validate_l_structure(1, standard_J(1), standard_canonical_field(1)).n == 1
    assert validate_l_structure(2, standard_J(2), standard_canonical_field(2)).n == 2


def test_identity_is_not_an_l_structure():
    with pytest.raises(LStructureError) as info:
        validate_l_structure(1, I2, standard_canonical_field(1))
    axioms = [a for a, _ in info.value.failures]
    assert "L o L = 0" in axioms


def test_rank_deficiency_is_reported():
    with pytest.raises(LStructureError, match="rank"):
        validate_l_structure(1, VecForm1.zero(2), standard_canonical_field(1))


def test_wrong_canonical_field_is_reported():
    with pytest.raises(LStructureError, match=r"\[C, L\] = -L"):
        validate_l_structure(1, standard_J(1), V("0", "2*y"))


def test_frame_changed_structure_validates():
    # constant change of frame w = P z applied to J and C
    P = np.array([[1, 2], [1, 3]], dtype=object)
    Pinv = np.array([[3, -2], [-1, 1]], dtype=object)
    L = VecForm1(P @ standard_J(1).coeffs @ Pinv)
    Cw = standard_canonical_field(1).coeffs[1].substitute_linear(Pinv.tolist())
    C = VecField(P @ np.array([Poly.zero(2), Cw], dtype=object))
    assert validate_l_structure(1, L, C).n == 1


# -- semibasic forms and semisprays ---------------------------------------------------------


def test_semibasic_examples(conn_q1):
    assert is_semibasic(conn_q1.Omega, base1)
    assert not is_semibasic(I2, base1)
    assert is_semibasic(VecForm2.zero(2), base1)


def test_semisprays_and_sprays():
    assert is_spray(S_F1, base1)
    assert is_spray(S_Q1, base1)
    S = V("y", "1")
    assert is_semispray(S, base1) and not is_spray(S, base1)


def test_conservative_rejects_non_sprays():
    with pytest.raises(NotASprayError):
        conservative(base1, V("y", "1"))
    with pytest.raises(NotASprayError):
        conservative(base1, V("x", "0"))


# -- L-connections --------------------------------------------------------------------------


def test_flat_connection_tensors(conn_f1):
    assert conn_f1.Gamma == form1([["1", "0"], ["0", "-1"]])
    assert conn_f1.v == form1([["0", "0"], ["0", "1"]])
    assert conn_f1.h == form1([["1", "0"], ["0", "0"]])
    assert conn_f1.F == form1([["0", "1"], ["-1", "0"]])
    assert conn_f1.T.is_zero() and conn_f1.Omega.is_zero() and conn_f1.t.is_zero()


def test_q1_connection_tensors(conn_q1):
    assert conn_q1.Gamma == form1([["1", "0"], ["-4*x*y", "-1"]])
    assert conn_q1.h == form1([["1", "0"], ["-2*x*y", "0"]])
    assert conn_q1.Omega.is_zero() and conn_q1.t.is_zero()


@pytest.mark.parametrize("name", ["conn_f1", "conn_q1"])
def test_connection_invariants(name, request):
    c = request.getfixturevalue(name)
    L, v, h, F, G = c.L, c.v, c.h, c.F, c.Gamma
    assert compose(G, G) == I2
    assert v + h == I2 and compose(v, v) == v and compose(h, h) == h
    assert compose(h, v).is_zero() and compose(v, h).is_zero()
    assert compose(L, v).is_zero() and compose(v, L) == L and compose(L, h) == L and compose(h, L).is_zero()
    assert compose(F, F) == -I2
    assert compose(F, L) == h and compose(F, h) == -L and compose(L, F) == v


def test_identity_is_not_an_l_connection():
    with pytest.raises(ConnectionAxiomError, match="Gamma L = -L"):
        make_l_connection(base1, I2)


def test_conservative_connection_is_homogeneous_and_torsion_free(r2):
    base = standard_structure(2)
    conn = conservative(base, r2.spray)
    assert is_homogeneous(conn) and conn.T.is_zero()
    assert not conn.Omega.is_zero()
    assert not is_strongly_flat(conn)


def test_strongly_flat_models(conn_f1, conn_q1):
    assert is_strongly_flat(conn_f1) and is_strongly_flat(conn_q1)


def test_strong_torsion_of_a_non_homogeneous_connection(conn_q1):
    y2 = parse_poly("y^2", 2)
    G = conn_q1.Gamma.coeffs.copy()
    G[1, 0] = G[1, 0] - 2 * y2
    conn = make_l_connection(base1, VecForm1(G))
    assert not is_homogeneous(conn)
    assert not conn.t.is_zero()


def test_strong_torsion_does_not_depend_on_the_semispray(conn_q1):
    other = V("y", "x^3 + y")
    assert strong_torsion(conn_q1, other) == strong_torsion(conn_q1)
    with pytest.raises(NotASprayError):
        strong_torsion(conn_q1, V("x", "0"))


def test_curvature_is_homogeneous_of_degree_one(r2):
    conn = conservative(standard_structure(2), r2.spray)
    assert lie_derivative(conn.C, conn.Omega).is_zero()


def test_curvature_is_not_its_own_lie_derivative_along_c(r2):
    """Witness against reading homogeneity of the curvature as ``[C, Omega] = Omega``."""
    conn = conservative(standard_structure(2), r2.spray)
    assert not (lie_derivative(conn.C, conn.Omega) - conn.Omega).is_zero()


def test_half_is_exact(conn_q1):
    assert conn_q1.v == (I2 - conn_q1.Gamma) * Fraction(1, 2)

from fractions import Fraction
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fnlift.polyring import Poly, arith, diff, evaluate, is_zero, parse_poly, variable_names

from conftest import points, polys

x, y = Poly.var(2, 0), Poly.var(2, 1)


def P(text, nvars=2):
    return parse_poly(text, nvars)


def rand_points(k, dim=2, seed=0):
    rng = random.Random(seed)
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(dim)] for _ in range(k)]


# -- arithmetic ------------------------------------------------------------------------------


def test_add_and_difference_of_squares():
    assert arith(x, y, "add") == P("x + y")
    assert arith(x + y, x - y, "mul") == P("x^2 - y^2")


def test_mul_checked_at_random_points():
    a, b = P("2*x*y"), P("2*x")
    prod = arith(a, b, "mul")
    assert prod == P("4*x^2*y")
    for pt in rand_points(5):
        assert prod(pt) == a(pt) * b(pt)


def test_arith_rejects_variable_count_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        arith(x, Poly.var(4, 0), "add")


def test_arith_rejects_unknown_operation():
    with pytest.raises(ValueError):
        arith(x, y, "div")


def test_canonical_form_drops_cancelled_terms():
    p = x * y - y * x
    assert p.terms == {}
    assert is_zero(P("x^2 - y^2") - (x + y) * (x - y))
    assert not is_zero(x + 1)


def test_rational_coefficients_stay_in_lowest_terms():
    p = P("2/4*x") * 3
    ((_, c),) = p.terms.items()
    assert c == Fraction(3, 2) and c.denominator == 2


def test_mixed_denominator_product():
    a = P("1/2*x + 2/3*y + 1")
    assert (a * a).to_str() == "1/4*x^2 + 2/3*x*y + x + 4/9*y^2 + 4/3*y + 1"


def test_power_matches_repeated_product():
    a = P("x - 1/3*y")
    assert a**3 == a * a * a
    assert a**0 == Poly.const(2, 1)


# -- calculus and evaluation --------------------------------------------------------------


def test_diff_power_rule_and_constants():
    assert diff(P("x^2*y"), 0) == P("2*x*y")
    assert diff(Poly.const(2, 7), 0).is_zero()


def test_diff_against_finite_differences():
    p = P("x*y^2")
    dp = diff(p, 1)
    assert dp == P("2*x*y")
    eps = 1e-6
    for px, py in rand_points(10, seed=3):
        fx, fy = float(px), float(py)
        fd = (fx * (fy + eps) ** 2 - fx * (fy - eps) ** 2) / (2 * eps)
        assert abs(fd - float(dp([px, py]))) < 1e-6 * max(1.0, abs(fd))


def test_diff_index_out_of_range():
    with pytest.raises(IndexError):
        diff(x, 2)


def test_evaluate_examples():
    assert evaluate(P("x^2*y"), (2, 3)) == 12
    assert evaluate(Poly.zero(2), (5, -1)) == 0
    assert evaluate(x + y, (Fraction(1, 2), Fraction(1, 3))) == Fraction(5, 6)


def test_evaluate_rejects_wrong_length():
    with pytest.raises(ValueError, match="length"):
        evaluate(x, (1, 2, 3))


# -- parsing and serialization ------------------------------------------------------------


def test_variable_names():
    assert variable_names(2) == ["x", "y"]
    assert variable_names(4) == ["x1", "x2", "y1", "y2"]


def test_parse_accepts_indexed_names_for_one_dimension():
    assert P("x1*y1^2") == P("x*y**2")


def test_parse_rejects_unknown_variables_and_nonconstant_division():
    with pytest.raises(ValueError, match="unknown variable"):
        P("x*z")
    with pytest.raises(ValueError, match="division"):
        P("x/y")


def test_records_round_trip():
    p = P("-3/2*x1^2*y2 + x2 - 7", 4)
    assert Poly.from_records(4, p.to_records()) == p
    assert all(isinstance(r["coeffs"], str) for r in p.to_records())


def test_substitute_linear_is_composition():
    p = P("x^2 - x*y")
    M = [[1, 2], [0, -1]]  # x -> x + 2y, y -> -y
    q = p.substitute_linear(M)
    for px, py in rand_points(5):
        assert q([px, py]) == p([px + 2 * py, -py])


def test_divexact():
    a, b = P("x^2 - y^2"), P("x + y")
    assert a.divexact(b) == x - y
    assert P("x^2 + 1").divexact(b) is None


# -- properties -------------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points(2))
def test_evaluation_is_a_ring_homomorphism(p, q, z):
    assert (p * q)(z) == p(z) * q(z)
    assert (p + q)(z) == p(z) + q(z)


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(0, 1), st.integers(0, 1))
def test_partial_derivatives_commute(p, i, j):
    assert p.diff(i).diff(j) == p.diff(j).diff(i)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_leibniz_rule(p, q):
    assert (p * q).diff(0) == p.diff(0) * q + p * q.diff(0)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_self_difference_is_zero(p):
    assert arith(p, p, "sub").is_zero()
    assert parse_poly(p.to_str(), 2) == p

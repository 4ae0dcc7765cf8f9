"""Shared models and strategies.

F1 is the flat spray on R^2, Q1 the spray with ``G = x y^2`` on R^2 and R2 the
curved random quadratic spray ``generate("r2", 2, 1, 42)`` on R^4.  Reports on
R2 take a few seconds each, so they are computed once per session.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from fnlift.harness import generate, run_suites, with_lift_form
from fnlift.harness.context import Context
from fnlift.polyring import Poly
from fnlift.tensor_calc import VecField, VecForm2


@pytest.fixture(scope="session")
def f1():
    return generate("flat", 1)


@pytest.fixture(scope="session")
def q1():
    return generate("q1", 1)


@pytest.fixture(scope="session")
def r2():
    return generate("r2", 2, 1, 42)


@pytest.fixture(scope="session")
def r2_with_b(r2):
    """R2 sheared so that ``B = y1 dx1 ^ dx2 (x) d/dy1`` is an admissible lift form."""
    B = VecForm2.zero(4).coeffs.copy()
    y1 = Poly.var(4, 2)
    B[2, 0, 1], B[2, 1, 0] = y1, -y1
    return with_lift_form(r2, VecForm2(B))


@pytest.fixture(scope="session")
def ctx_f1(f1):
    return Context(f1)


@pytest.fixture(scope="session")
def ctx_q1(q1):
    return Context(q1)


@pytest.fixture(scope="session")
def ctx_r2(r2):
    return Context(r2)


_REPORTS: dict = {}


@pytest.fixture(scope="session")
def report():
    """``report(model, backend)``: full catalog report, memoized for the session."""

    def get(model, backend="exact"):
        key = (model.model_id, backend)
        if key not in _REPORTS:
            _REPORTS[key] = run_suites(model, "all", backend, samples=100, seed=1)
        return _REPORTS[key]

    return get


# -- hypothesis strategies ----------------------------------------------------------------------

small_rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def polys(draw, nvars: int = 2, max_terms: int = 4, max_exp: int = 3) -> Poly:
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * nvars),
            small_rationals.filter(bool),
            max_size=max_terms,
        )
    )
    return Poly(nvars, terms)


@st.composite
def fields(draw, dim: int = 2, **kw) -> VecField:
    return VecField(np.array([draw(polys(dim, **kw)) for _ in range(dim)], dtype=object))


def points(dim: int):
    return st.lists(small_rationals, min_size=dim, max_size=dim)


# -- acceptance summary -------------------------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``criterion(number, ok, detail)`` records one acceptance line for the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> bool:
        ACCEPTANCE[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])

"""The seven acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL`` line that is printed in the
``acceptance criteria`` section of the pytest terminal summary.  A criterion
that does not hold is recorded as FAIL and its test fails (criterion 7 is an
expected failure; see the test's docstring).
"""

import json
import time
from pathlib import Path

import pytest

from fnlift.harness import generate, model_from_dict, run_suites
from fnlift.harness.context import Context
from fnlift.harness.report import FAIL, FAIL_FORMULA, PASS
from fnlift.lifts import equivalence_quantities
from fnlift.linconn import bold_torsion, connection_map, cov_deriv
from fnlift.polyring import parse_poly
from fnlift.tensor_calc import VecField, apply, coordinate_field, fn_bracket_11, lie_bracket, lie_derivative_form

import oracles

GOLDEN = json.loads((Path(__file__).parent / "fixtures" / "q1_golden.json").read_text())
BROKEN = {"id": "broken", "n": 1, "connection": [["1", "0"], ["-4*x*y", "1"]]}


def _failures(report, allowed=(PASS,)):
    return {r.statement: r.verdict for r in report.rows if r.verdict not in allowed}


def test_criterion_1_anchor_conventions(criterion):
    t0 = time.perf_counter()
    ctx = Context(generate("flat", 1))
    L, C, S = ctx.base.L, ctx.base.C, ctx.model.spray
    checks = {
        "[C, J] = -J": lie_derivative_form(C, L) == -L,
        "[J, J] = 0": fn_bracket_11(L, L).is_zero(),
        "LS = C": apply(L, S) == C,
        "[C, S] = S": lie_bracket(C, S) == S,
    }
    elapsed = time.perf_counter() - t0
    ok = all(checks.values()) and elapsed < 1.0
    failed = [k for k, v in checks.items() if not v]
    criterion(1, ok, f"F1 anchors exact in {elapsed:.3f} s" + (f"; failed: {failed}" if failed else ""))
    assert ok


def test_criterion_2_connection_suite(criterion, f1, q1, r2):
    t0 = time.perf_counter()
    bad = {}
    for m in (f1, q1, r2):
        bad.update({f"{m.model_id}:{k}": v for k, v in _failures(run_suites(m, "connection")).items()})
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    criterion(2, ok, f"connection suite on F1, Q1, R2 all PASS in {elapsed:.1f} s" if ok else f"{bad} ({elapsed:.1f} s)")
    assert ok


BERWALD_REGULAR = "regular,berwald.predicates,berwald.round_trip,berwald.characterization,berwald.extension,berwald.lie_vertical,berwald.torsion"


def test_criterion_3_berwald_lift_and_regular_connections(criterion, q1, r2):
    bad, rows = {}, 0
    for m in (q1, r2):
        rep = run_suites(m, BERWALD_REGULAR)
        rows += len(rep.rows)
        bad.update({f"{m.model_id}:{k}": v for k, v in _failures(rep).items()})
    ok = not bad
    criterion(3, ok, f"{rows} Berwald-lift / regular-connection rows on Q1, R2 all PASS" if ok else str(bad))
    assert ok


def test_criterion_4_reducible_lifts(criterion, f1, q1, r2, r2_with_b, ctx_f1, ctx_q1, ctx_r2):
    notes, bad = [], {}
    for m in (q1, r2, r2_with_b):
        rep = run_suites(m, "lift")
        for row in rep.rows:
            if row.verdict == FAIL_FORMULA:
                # a closed-formula discrepancy is acceptable only if recorded with its residual
                if not row.witness:
                    bad[f"{m.model_id}:{row.statement}"] = "FAIL-FORMULA without residual"
                else:
                    notes.append(f"{m.model_id}:{row.statement} FAIL-FORMULA recorded at {row.witness.get('index')}")
            elif row.verdict != PASS:
                bad[f"{m.model_id}:{row.statement}"] = row.verdict
    symmetric = bold_torsion(ctx_f1.berwald).is_zero() and bold_torsion(ctx_q1.berwald).is_zero()
    hit = ctx_r2.conn.Omega.first_nonzero()
    exhibited = hit is not None and not hit[1].is_zero()
    ok = not bad and symmetric and exhibited
    detail = "lift suite on Q1, R2, R2 with B != 0: all non-formula rows PASS"
    if exhibited:
        detail += f"; R2 Omega{list(hit[0])} = {hit[1].to_str()}"
    if notes:
        detail += "; " + "; ".join(notes)
    criterion(4, ok, detail if ok else f"{bad}; symmetric lifts on F1/Q1: {symmetric}")
    assert ok


def test_criterion_5_berwald_lift_of_conservative_connections(criterion, f1, q1, r2, ctx_f1, ctx_q1, ctx_r2):
    bad = _failures(run_suites(r2, "berwald"))
    booleans = {}
    for name, ctx in (("F1", ctx_f1), ("Q1", ctx_q1), ("R2", ctx_r2)):
        q = equivalence_quantities(ctx.conn, ctx.berwald_triple.R)
        booleans[name] = {k: v.is_zero() for k, v in q.items()}
    agree = (
        not any(booleans["R2"].values())
        and all(booleans["Q1"].values())
        and all(booleans["F1"].values())
    )
    ok = not bad and agree
    criterion(5, ok, "berwald suite on R2 all PASS; Ω°, Ω, R, [F,F] all nonzero on R2 and zero on Q1, F1" if ok else f"{bad}; {booleans}")
    assert ok


def test_criterion_5_runtime_at_degree_three():
    t0 = time.perf_counter()
    rep = run_suites(generate("r2", 2, 3, 42), "berwald")
    elapsed = time.perf_counter() - t0
    assert not _failures(rep)
    assert elapsed < 300, f"{elapsed:.0f} s"


def test_criterion_6_backend_cross_validation(criterion, f1, q1, r2, report):
    differ = {}
    for m in (f1, q1, r2):
        e, p = report(m, "exact").verdicts(), report(m, "points").verdicts()
        differ.update({f"{m.model_id}:{k}": (e[k], p[k]) for k in e if e[k] != p[k]})
    broken = model_from_dict(BROKEN)
    caught = []
    for backend in ("exact", "points"):
        row = run_suites(broken, "connection.axioms", backend, 100, 1).row("connection.axioms")
        caught.append(row.verdict == FAIL and bool(row.witness))
    ok = not differ and all(caught)
    criterion(6, ok, "identical verdict vectors on F1, Q1, R2 (100 samples, seed 1); broken Γ FAILs on both with witness" if ok else f"{differ}; broken caught: {caught}")
    assert ok


# -- golden values --------------------------------------------------------------------------------

ex, ey = coordinate_field(2, 0), coordinate_field(2, 1)


def _V(*comps):
    return VecField([parse_poly(c, 2) for c in comps], 2)


def _golden_check(stated_dxdx):
    ctx = Context(generate("q1", 1))
    D = ctx.berwald
    engine = {
        "Γ ∂x": apply(ctx.conn.Gamma, ex),
        "D_∂x ∂y": cov_deriv(D, ex, ey),
        "D_∂x ∂x": cov_deriv(D, ex, ex),
        "K ∂x": apply(connection_map(D, ctx.base).K, ex),
    }
    expected = {
        "Γ ∂x": _V("1", "-4*x*y"),
        "D_∂x ∂y": _V("0", "2*x"),
        "D_∂x ∂x": _V(*stated_dxdx),
        "K ∂x": _V("0", "2*x*y"),
    }
    # independent coordinate oracle for G = x y^2
    gamma = oracles.berwald_christoffel([parse_poly("x*y^2", 2)])
    K = oracles.connection_map([parse_poly("x*y^2", 2)])
    oracle = {
        "Γ ∂x": _V(*(p.to_str() for p in oracles.gamma_matrix([parse_poly("x*y^2", 2)])[:, 0])),
        "D_∂x ∂y": VecField([gamma[k, 0, 1] for k in range(2)], 2),
        "D_∂x ∂x": VecField([gamma[k, 0, 0] for k in range(2)], 2),
        "K ∂x": VecField([K[k, 0] for k in range(2)], 2),
    }
    return engine, expected, oracle


def _fmt(X):
    return f"({X.coeffs[0].to_str()}) ∂x + ({X.coeffs[1].to_str()}) ∂y"


def test_golden_values_hand_derived():
    """Engine, oracle and the committed hand derivation agree on all four values."""
    engine, expected, oracle = _golden_check(GOLDEN["berwald"]["D_{d/dx} d/dx"])
    assert engine == expected == oracle


@pytest.mark.xfail(strict=True, reason="stated D_∂x ∂x disagrees with engine, oracle and hand derivation")
def test_criterion_7_golden_values(criterion):
    """The four values exactly as stated in the acceptance criteria.

    Three match.  The stated ``D_∂x ∂x = 2x ∂x + (2y + 4x²y) ∂y`` is not
    reproduced: the engine, the independent coordinate oracle and a hand
    derivation all give ``2x ∂x + 2y ∂y``.  The criterion is recorded as FAIL
    and this test is a strict expected failure, so it turns into an error if
    the engine ever starts producing the stated value.
    """
    engine, expected, oracle = _golden_check(GOLDEN["stated_but_not_reproduced"]["D_{d/dx} d/dx"])
    wrong = [k for k in expected if engine[k] != expected[k]]
    detail = "Γ ∂x, D_∂x ∂y, D_∂x ∂x, K ∂x match the engine and the oracle"
    if wrong:
        detail = "; ".join(
            f"{k}: stated {_fmt(expected[k])}, engine {_fmt(engine[k])}, oracle {_fmt(oracle[k])}" for k in wrong
        )
        detail += f"; other {4 - len(wrong)} values match"
    criterion(7, not wrong, detail)
    assert not wrong

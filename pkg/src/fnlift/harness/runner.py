"""Run catalog statements on a model with the exact or the sampling backend."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .._linalg import NonPolynomialError
from ..lgeometry import GeometryError
from ..tensor_calc import VectorTensor
from .context import Context
from .model import ModelSpec
from .report import FAIL, FAIL_FORMULA, PASS, SKIPPED, Report, Row
from .suites import Equivalent, NonVanishing, Vanishes, select

__all__ = ["ExactBackend", "PointsBackend", "TOLERANCE", "run_suites", "sample_points"]

TOLERANCE = 1e-9
_RESIDUAL_ENTRIES = 8


@dataclass(frozen=True)
class Probe:
    """Outcome of testing one tensor for vanishing."""

    zero: bool
    witness: dict | None = None
    norm: float | None = None


class ExactBackend:
    """A tensor vanishes when every coefficient polynomial is the zero polynomial."""

    name = "exact"

    def probe(self, T: VectorTensor, full: bool = False) -> Probe:
        entries = list(T.nonzero_entries())
        if not entries:
            return Probe(True)
        idx, p = entries[0]
        witness = {"index": list(idx), "value": p.to_str()}
        if full:
            witness["residual"] = [{"index": list(i), "value": q.to_str()} for i, q in entries[:_RESIDUAL_ENTRIES]]
            witness["nonzero_entries"] = len(entries)
        return Probe(False, witness)


def sample_points(dim: int, samples: int, seed: int) -> list[tuple[Fraction, ...]]:
    """Seeded rational sample points with small numerators and denominators."""
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(dim)) for _ in range(samples)]


class PointsBackend:
    """A tensor vanishes when every coefficient is below the tolerance at every sample point.

    Values are computed exactly and converted to float only for the comparison.
    """

    name = "points"

    def __init__(self, dim: int, samples: int = 100, seed: int = 0):
        self.samples, self.seed = samples, seed
        self.points = sample_points(dim, samples, seed)

    def probe(self, T: VectorTensor, full: bool = False) -> Probe:
        worst, witness = 0.0, None
        for idx, p in T.nonzero_entries():
            for pt in self.points:
                value = abs(float(p(pt)))
                if value > worst:
                    worst = value
                if value >= TOLERANCE and witness is None:
                    witness = {"index": list(idx), "point": [str(a) for a in pt], "value": float(p(pt))}
                    if not full:
                        return Probe(False, witness, value)
        return Probe(witness is None, witness, worst)


def _evaluate(claims: list, backend, formula: bool):
    """``(ok, witness, norm)`` for the claims of one statement."""
    norm = 0.0 if backend.name == "points" else None
    failure = None
    for claim in claims:
        if isinstance(claim, Vanishes):
            pr = backend.probe(claim.tensor, full=formula)
            if norm is not None and pr.norm is not None:
                norm = max(norm, pr.norm)
            if not pr.zero and failure is None:
                failure = {"claim": claim.label, **pr.witness}
        elif isinstance(claim, NonVanishing):
            if all(backend.probe(T).zero for T in claim.tensors) and failure is None:
                failure = {"claim": claim.label, "value": "identically zero"}
        elif isinstance(claim, Equivalent):
            holds = {name: all(backend.probe(T).zero for T in tensors) for name, tensors in claim.groups}
            if len(set(holds.values())) > 1 and failure is None:
                failure = {"claim": claim.label, "holds": holds}
        else:  # pragma: no cover - catalog bug
            raise TypeError(f"unknown claim {claim!r}")
    return failure is None, failure, norm


def run_suites(
    model: ModelSpec,
    suites: str | None = "all",
    backend: str = "exact",
    samples: int = 100,
    seed: int = 0,
) -> Report:
    """Evaluate the selected statements on ``model``.

    Rows whose preconditions fail are SKIPPED with the reason; a failing
    displayed closed formula is FAIL-FORMULA, any other failure FAIL.
    """
    statements = select(suites)
    ctx = Context(model)
    if backend == "exact":
        be = ExactBackend()
    elif backend == "points":
        be = PointsBackend(ctx.dim, samples, seed)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    rows = []
    for st in statements:
        reason = ctx.unmet(st.needs)
        if reason:
            rows.append(Row(st.suite, st.id, st.anchor, SKIPPED, reason=reason))
            continue
        try:
            ok, witness, norm = _evaluate(st.check(ctx), be, st.formula)
        except (GeometryError, NonPolynomialError, ArithmeticError) as exc:
            ok, witness, norm = False, {"error": f"{type(exc).__name__}: {exc}"}, None
        verdict = PASS if ok else (FAIL_FORMULA if st.formula else FAIL)
        rows.append(Row(st.suite, st.id, st.anchor, verdict, witness=witness, residual_norm=norm))
    return Report(
        model.model_id,
        be.name,
        rows,
        samples=samples if backend == "points" else None,
        seed=seed if backend == "points" else None,
    )

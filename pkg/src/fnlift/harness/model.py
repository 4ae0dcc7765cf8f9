"""Model specifications: JSON ingestion, built-in generators and construction.

A model is a half-dimension ``n``, an L-structure (``l_form`` and
``canonical_field``, defaulting to the tangent-bundle ones) and exactly one
connection source:

* ``spray`` -- either the ``n`` coefficients ``G^i`` of
  ``S = y^i d/dx^i - 2 G^i d/dy^i`` or all ``2n`` components of ``S``;
* ``connection`` -- an explicit L-connection ``Gamma`` (``2n x 2n`` matrix,
  ``connection[k][j]`` is the ``d_k`` component of ``Gamma(e_j)``);
* ``gamma`` -- Christoffel coefficients ``gamma[k][i][j]`` of a linear
  connection.

Polynomials are strings (``"x*y^2 - 1/2*y"``) or term records
``[{"coeffs": "1/2", "exps": [1, 0]}]``.  An optional constant ``frame_change``
matrix ``P`` pushes every object forward along ``w = P z``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .. import _linalg
from ..lgeometry import standard_canonical_field, standard_J
from ..linconn import LinearConnection
from ..polyring import Poly, parse_poly
from ..tensor_calc import VecField, VecForm1, VecForm2, fn_bracket_11, fn_bracket_form_field, identity_form, potential

__all__ = [
    "SchemaError",
    "ModelSpec",
    "load_model",
    "model_from_dict",
    "generate",
    "with_lift_form",
    "GENERATOR_KINDS",
]

GENERATOR_KINDS = ("flat", "q1", "r2", "random")

_FIELDS = {"id", "n", "l_form", "canonical_field", "spray", "connection", "gamma", "b_form", "frame_change"}
_SOURCES = ("spray", "connection", "gamma")


class SchemaError(ValueError):
    """Invalid model document; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """A validated model with defaults filled in (before any frame change)."""

    model_id: str
    n: int
    l_form: VecForm1
    canonical_field: VecField
    spray: VecField | None = None
    connection: VecForm1 | None = None
    gamma: LinearConnection | None = None
    b_form: VecForm2 | None = None
    frame_change: tuple | None = None

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def source(self) -> str:
        return next(s for s in _SOURCES if getattr(self, s) is not None)

    def adapted(self) -> "ModelSpec":
        """The same model pushed forward along ``frame_change`` (identity if absent)."""
        if self.frame_change is None:
            return self
        P = np.array(self.frame_change, dtype=object)
        Pinv = _linalg.inverse(np.vectorize(lambda a: Poly.const(1, a), otypes=[object])(P))
        Pinv = np.vectorize(lambda p: p.constant_value(), otypes=[object])(Pinv)

        def push(coeffs: np.ndarray) -> np.ndarray:
            out = np.vectorize(lambda p: p.substitute_linear(Pinv), otypes=[object])(coeffs)
            out = np.tensordot(P, out, axes=([1], [0]))
            for axis in range(1, coeffs.ndim):
                out = np.moveaxis(np.tensordot(out, Pinv, axes=([axis], [0])), -1, axis)
            return np.vectorize(lambda p: p + 0, otypes=[object])(out)

        def push_obj(obj):
            if obj is None:
                return None
            if isinstance(obj, LinearConnection):
                return LinearConnection(push(obj.gamma))
            return type(obj)(push(obj.coeffs))

        return ModelSpec(
            self.model_id,
            self.n,
            push_obj(self.l_form),
            push_obj(self.canonical_field),
            push_obj(self.spray),
            push_obj(self.connection),
            push_obj(self.gamma),
            push_obj(self.b_form),
            None,
        )

    def to_dict(self) -> dict[str, Any]:
        """Serialize with polynomials as term records (round-trips through :func:`model_from_dict`)."""
        rec = np.vectorize(lambda p: p.to_records(), otypes=[object])
        out: dict[str, Any] = {"id": self.model_id, "n": self.n}
        out["l_form"] = rec(self.l_form.coeffs).tolist()
        out["canonical_field"] = rec(self.canonical_field.coeffs).tolist()
        for name in ("spray", "connection", "b_form"):
            obj = getattr(self, name)
            if obj is not None:
                out[name] = rec(obj.coeffs).tolist()
        if self.gamma is not None:
            out["gamma"] = rec(self.gamma.gamma).tolist()
        if self.frame_change is not None:
            out["frame_change"] = [[str(a) for a in row] for row in self.frame_change]
        return out


# -- ingestion ---------------------------------------------------------------------------


def _poly(value, nvars: int, path: str) -> Poly:
    try:
        if isinstance(value, str):
            return parse_poly(value, nvars)
        if isinstance(value, bool):
            raise ValueError("expected a polynomial, got a boolean")
        if isinstance(value, int):
            return Poly.const(nvars, value)
        if isinstance(value, list) and all(isinstance(r, dict) for r in value):
            for r in value:
                if set(r) != {"coeffs", "exps"}:
                    raise ValueError("term records need exactly the keys 'coeffs' and 'exps'")
            return Poly.from_records(nvars, value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SchemaError(path, str(exc)) from None
    raise SchemaError(path, f"expected a polynomial string or term records, got {type(value).__name__}")


def _array(value, shape: tuple, nvars: int, path: str) -> np.ndarray:
    out = np.empty(shape, dtype=object)

    def walk(node, idx):
        depth = len(idx)
        if depth == len(shape):
            out[idx] = _poly(node, nvars, path + "".join(f"[{i}]" for i in idx))
            return
        if not isinstance(node, list) or len(node) != shape[depth]:
            where = path + "".join(f"[{i}]" for i in idx)
            raise SchemaError(where, f"expected a list of length {shape[depth]}")
        for i, child in enumerate(node):
            walk(child, idx + (i,))

    walk(value, ())
    return out


def _rational(value, path: str) -> Fraction:
    try:
        if isinstance(value, bool):
            raise ValueError
        return Fraction(value) if isinstance(value, (int, str)) else Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"expected a rational constant, got {value!r}") from None


def model_from_dict(doc: dict, default_id: str = "model") -> ModelSpec:
    """Validate a model document and fill in defaults."""
    if not isinstance(doc, dict):
        raise SchemaError("$", "model must be a JSON object")
    unknown = sorted(set(doc) - _FIELDS)
    if unknown:
        raise SchemaError(f"$.{unknown[0]}", "unknown field")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("$.n", "half-dimension must be a positive integer")
    d = 2 * n
    given = [s for s in _SOURCES if doc.get(s) is not None]
    if len(given) != 1:
        raise SchemaError("$", f"exactly one of {', '.join(_SOURCES)} is required, got {given or 'none'}")

    L = VecForm1(_array(doc["l_form"], (d, d), d, "$.l_form")) if doc.get("l_form") is not None else standard_J(n)
    if doc.get("canonical_field") is not None:
        C = VecField(_array(doc["canonical_field"], (d,), d, "$.canonical_field"))
    else:
        C = standard_canonical_field(n)

    spray = connection = gamma = b_form = None
    if "spray" in given:
        raw = doc["spray"]
        if not isinstance(raw, list) or len(raw) not in (n, d):
            raise SchemaError("$.spray", f"expected {n} coefficients G^i or {d} components")
        comps = _array(raw, (len(raw),), d, "$.spray")
        if len(raw) == n:
            y = [Poly.var(d, n + i) for i in range(n)]
            comps = np.array(y + [-2 * g for g in comps], dtype=object)
        spray = VecField(comps)
    elif "connection" in given:
        connection = VecForm1(_array(doc["connection"], (d, d), d, "$.connection"))
    else:
        gamma = LinearConnection(_array(doc["gamma"], (d, d, d), d, "$.gamma"))
    if doc.get("b_form") is not None:
        if gamma is not None:
            raise SchemaError("$.b_form", "a lift form needs a spray or connection source")
        b_form = VecForm2(_array(doc["b_form"], (d, d, d), d, "$.b_form"))

    frame = None
    if doc.get("frame_change") is not None:
        raw = doc["frame_change"]
        if not isinstance(raw, list) or len(raw) != d or any(not isinstance(r, list) or len(r) != d for r in raw):
            raise SchemaError("$.frame_change", f"expected a {d} x {d} matrix")
        frame = tuple(tuple(_rational(a, f"$.frame_change[{i}][{j}]") for j, a in enumerate(r)) for i, r in enumerate(raw))
        M = np.vectorize(lambda a: Poly.const(1, a), otypes=[object])(np.array(frame, dtype=object))
        if _linalg.det(M).is_zero():
            raise SchemaError("$.frame_change", "matrix is singular")

    model_id = doc.get("id", default_id)
    if not isinstance(model_id, str) or not model_id:
        raise SchemaError("$.id", "expected a non-empty string")
    return ModelSpec(model_id, n, L, C, spray, connection, gamma, b_form, frame)


def load_model(path: str | Path) -> ModelSpec:
    """Read and validate a model file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise SchemaError(str(path), "file not found") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(str(path), f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return model_from_dict(doc, default_id=path.stem)


# -- generators ------------------------------------------------------------------------------


def _draw(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 2)))


def _random_poly_x(rng: random.Random, n: int, degree: int) -> Poly:
    """Random polynomial of total degree <= ``degree`` in the base variables ``x``."""
    d = 2 * n
    p = Poly.zero(d)
    exps = [e for e in np.ndindex(*([degree + 1] * n)) if sum(e) <= degree]
    for e in exps:
        c = _draw(rng)
        if c:
            p = p + Poly.monomial(d, tuple(e) + (0,) * n, c)
    return p


def _quadratic_spray(rng: random.Random, n: int, degree: int) -> list[Poly]:
    """``G^i = gamma^i_{jk}(x) y^j y^k`` with ``gamma`` symmetric in ``j, k``."""
    d = 2 * n
    y = [Poly.var(d, n + i) for i in range(n)]
    G = []
    for _ in range(n):
        g = Poly.zero(d)
        for j in range(n):
            for k in range(j, n):
                coeff = _random_poly_x(rng, n, degree)
                g = g + coeff * y[j] * y[k] * (1 if j == k else 2)
        G.append(g)
    return G


def _spray_doc(model_id: str, n: int, G: list[Poly]) -> dict:
    return {"id": model_id, "n": n, "spray": [g.to_records() for g in G]}


def _curvature_at_point(spec: ModelSpec, rng: random.Random) -> bool:
    """Whether ``Omega = -[h, h]/2`` of the spray's connection is nonzero at a random point."""
    Gamma = fn_bracket_form_field(spec.l_form, spec.spray)
    h = (identity_form(spec.dim) + Gamma) * Fraction(1, 2)
    Omega = fn_bracket_11(h, h)
    point = [Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3))) for _ in range(spec.dim)]
    return any(v != 0 for v in Omega.eval(point).flat)


def generate(kind: str, n: int = 1, degree: int = 1, seed: int = 0) -> ModelSpec:
    """Deterministic built-in model for ``(kind, n, degree, seed)``.

    ``flat``: ``S = y^i d/dx^i``.  ``q1``: ``G^i = x^i (y^i)^2``.  ``r2``:
    random quadratic spray with ``x``-dependent coefficients of the given
    degree, regenerated with the next seed until the curvature is nonzero at a
    sample point (needs ``n >= 2``).  ``random``: an ungated random quadratic
    spray seen through a random constant frame change (sparse when ``n >= 2``).
    """
    if kind not in GENERATOR_KINDS:
        raise SchemaError("generate.kind", f"unknown kind {kind!r}; expected one of {', '.join(GENERATOR_KINDS)}")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("generate.n", "half-dimension must be a positive integer")
    if degree < 0:
        raise SchemaError("generate.degree", "degree must be non-negative")
    d = 2 * n
    if kind == "flat":
        return model_from_dict(_spray_doc(f"flat-n{n}", n, [Poly.zero(d)] * n))
    if kind == "q1":
        G = [Poly.var(d, i) * Poly.var(d, n + i) ** 2 for i in range(n)]
        return model_from_dict(_spray_doc(f"q1-n{n}", n, G))
    if kind == "r2":
        if n < 2:
            raise SchemaError("generate.n", "r2 needs n >= 2 (curvature needs horizontal rank >= 2)")
        s = seed
        while True:
            rng = random.Random(s)
            spec = model_from_dict(_spray_doc(f"r2-n{n}-d{degree}-s{seed}", n, _quadratic_spray(rng, n, degree)))
            if _curvature_at_point(spec, rng):
                return spec
            s += 1
    rng = random.Random(seed)
    doc = _spray_doc(f"random-n{n}-d{degree}-s{seed}", n, _quadratic_spray(rng, n, degree))
    while True:
        P = _frame_change(rng, d)
        M = np.vectorize(lambda a: Poly.const(1, a), otypes=[object])(np.array(P, dtype=object))
        if not _linalg.det(M).is_zero():
            break
    doc["frame_change"] = [[str(a) for a in row] for row in P]
    return model_from_dict(doc)


def _frame_change(rng: random.Random, d: int) -> list[list[Fraction]]:
    """A random constant frame change: dense for ``d = 2``, otherwise the
    identity plus one random off-diagonal entry per column.

    A dense change in more variables fills in every coefficient polynomial
    and makes the exact suites far slower without exercising anything new.
    """
    if d == 2:
        return [[_draw(rng) for _ in range(d)] for _ in range(d)]
    P = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for j in range(d):
        i = rng.choice([r for r in range(d) if r != j])
        P[i][j] = _draw(rng)
    return P


def with_lift_form(spec: ModelSpec, B: VecForm2, model_id: str | None = None) -> ModelSpec:
    """Shear a spray model's connection so that ``B`` becomes an admissible lift form.

    With ``Gamma = [L, S]`` homogeneous, the lift condition ``B° + [C, h] = 0``
    fails for any ``B`` with ``B° != 0``.  Replacing ``h`` by ``h + A`` with
    ``[C, A] = -B°`` restores it: on the tangent-bundle structure ``[C, .]``
    multiplies a component of ``y``-degree ``m`` of a form ``dx (x) d/dy`` by
    ``m - 1``, so each such component of ``B°`` is divided by ``1 - m``.
    The model must use the default L-structure and ``B°`` must have no
    component of ``y``-degree one.
    """
    if spec.spray is None or spec.frame_change is not None:
        raise SchemaError("$.spray", "needs a spray model in tangent-bundle coordinates")
    n, d = spec.n, spec.dim
    if not ((spec.l_form - standard_J(n)).is_zero() and (spec.canonical_field - standard_canonical_field(n)).is_zero()):
        raise SchemaError("$.l_form", "needs the default L-structure")
    S = spec.spray
    B0 = potential(B, S)
    A = np.empty((d, d), dtype=object)
    for idx in np.ndindex(A.shape):
        out = Poly.zero(d)
        for e, c in B0.coeffs[idx].terms.items():
            m = sum(e[n:])
            if m == 1:
                raise SchemaError("$.b_form", "B° has a component of y-degree one; no polynomial shear exists")
            out = out + Poly.monomial(d, e, c / (1 - m))
        A[idx] = out
    Gamma = fn_bracket_form_field(spec.l_form, S) + VecForm1(A) * 2
    return ModelSpec(
        model_id or f"{spec.model_id}-b",
        n,
        spec.l_form,
        spec.canonical_field,
        connection=Gamma,
        b_form=B,
    )

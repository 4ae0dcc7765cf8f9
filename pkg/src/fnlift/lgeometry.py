"""L-structures, semisprays and nonlinear L-connections.

An L-structure is a vector 1-form ``L`` on R^{2n} of constant rank ``n``
with ``L o L = 0`` and vanishing Nijenhuis torsion, together with the
canonical field ``C`` satisfying ``[C, L] = -L``.  An L-connection is a
vector 1-form ``Gamma`` with ``L Gamma = L`` and ``Gamma L = -L``; its
derived tensors (projectors, almost-complex structure, torsion, strong
torsion and curvature) are computed once at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _linalg
from ._linalg import NonPolynomialError
from .polyring import Poly
from .tensor_calc import (
    VecField,
    VecForm1,
    VecForm2,
    VectorTensor,
    apply,
    compose,
    fn_bracket_11,
    fn_bracket_form_field,
    identity_form,
    lie_bracket,
    lie_derivative,
    potential,
)

__all__ = [
    "GeometryError",
    "LStructureError",
    "ConnectionAxiomError",
    "NotASprayError",
    "NonPolynomialError",
    "LStructure",
    "LConnection",
    "standard_structure",
    "standard_J",
    "standard_canonical_field",
    "validate_l_structure",
    "is_semibasic",
    "semibasic_residuals",
    "is_semispray",
    "is_spray",
    "make_l_connection",
    "conservative",
    "strong_torsion",
    "is_homogeneous",
    "is_strongly_flat",
    "pullback_slots",
]


class GeometryError(ValueError):
    """Base class for rejected geometric input."""

    def __init__(self, message: str, failures: list | None = None):
        super().__init__(message)
        self.failures = failures or []


class LStructureError(GeometryError):
    pass


class ConnectionAxiomError(GeometryError):
    pass


class NotASprayError(GeometryError):
    pass


def _witness(T: VectorTensor):
    hit = T.first_nonzero()
    if hit is None:
        return None
    idx, p = hit
    return {"index": list(idx), "value": str(p)}


def standard_J(n: int) -> VecForm1:
    """The natural almost-tangent structure ``d/dx^i -> d/dy^i``."""
    d = 2 * n
    M = np.zeros((d, d), dtype=int).astype(object)
    for i in range(n):
        M[n + i, i] = 1
    return VecForm1(M, d)


def standard_canonical_field(n: int) -> VecField:
    d = 2 * n
    return VecField([0] * n + [Poly.var(d, n + i) for i in range(n)], d)


def pullback_slots(A: VectorTensor, *forms) -> VectorTensor:
    """Precompose argument slots with 1-forms: ``A(K1 X1, K2 X2, ...)``.

    ``None`` leaves a slot untouched.
    """
    from .tensor_calc import wrap

    r = A.degree
    if len(forms) > r:
        raise ValueError("more forms than slots")
    # One slot at a time: a single many-operand einsum over object arrays
    # would loop over every index combination at once.
    res = A.coeffs
    for s, K in enumerate(forms):
        if K is None:
            continue
        res = np.moveaxis(np.tensordot(res, K.coeffs, axes=([1 + s], [0])), -1, 1 + s)
    if res is A.coeffs:
        return A
    return wrap(res)


@dataclass(frozen=True, eq=False)
class LStructure:
    """Validated L-structure; build it with :func:`validate_l_structure`."""

    n: int
    L: VecForm1
    C: VecField
    minor_rows: tuple = ()
    minor_cols: tuple = ()
    right_inverse: VecForm1 | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def identity(self) -> VecForm1:
        return identity_form(self.dim)

    def vertical_frame(self) -> np.ndarray:
        """Columns ``L e_j`` for the certified minor columns; a frame of ``Im L``."""
        return self.L.coeffs[:, list(self.minor_cols)]

    def semispray(self, shift: VecField | None = None) -> VecField:
        """A semispray ``S`` with ``LS = C``; ``shift`` adds an arbitrary vertical field."""
        S = apply(self.right_inverse, self.C)
        if shift is not None:
            S = S + apply(self.L, shift)
        return S


def standard_structure(n: int) -> LStructure:
    return validate_l_structure(n, standard_J(n), standard_canonical_field(n))


def _generalized_inverse(L: VecForm1, n: int):
    """Pick an ``n x n`` minor and build ``A`` with ``L A L = L``.

    Minors with a constant determinant are preferred, so the inverse block is
    polynomial; otherwise exact division is attempted.
    """
    M = L.coeffs
    best = None
    for rows, cols, d in _linalg.minors(M, n):
        if d.is_zero():
            continue
        if d.is_constant():
            best = (rows, cols)
            break
        if best is None:
            best = (rows, cols)
    if best is None:
        return None
    rows, cols = best
    block_inv = _linalg.inverse(M[np.ix_(rows, cols)])
    A = np.empty(M.shape, dtype=object)
    z = Poly.zero(L.dim)
    for idx in np.ndindex(A.shape):
        A[idx] = z
    for a, c in enumerate(cols):
        for b, r in enumerate(rows):
            A[c, r] = block_inv[a, b]
    return rows, cols, VecForm1(A)


def validate_l_structure(n: int, L: VecForm1, C: VecField | None = None) -> LStructure:
    """Check the L-structure axioms exactly and return the validated structure.

    Every failed axiom is collected; the raised :class:`LStructureError`
    lists them in ``failures`` as ``(axiom, witness)`` pairs.
    """
    d = 2 * n
    if L.dim != d:
        raise LStructureError(f"L has dimension {L.dim}, expected {d}")
    if C is None:
        C = standard_canonical_field(n)
    if C.dim != d:
        raise LStructureError(f"C has dimension {C.dim}, expected {d}")
    failures = []
    LL = compose(L, L)
    if not LL.is_zero():
        failures.append(("L o L = 0", _witness(LL)))
    inv = _generalized_inverse(L, n)
    if inv is None:
        failures.append(("rank L = n", {"reason": "every n x n minor vanishes"}))
    else:
        for rows, cols, dd in _linalg.minors(L.coeffs, n + 1) if n + 1 <= d else ():
            if not dd.is_zero():
                failures.append(("rank L = n", {"rows": list(rows), "cols": list(cols), "minor": str(dd)}))
                break
    NL = fn_bracket_11(L, L)
    if not NL.is_zero():
        failures.append(("[L, L] = 0", _witness(NL)))
    CL = lie_derivative(C, L) + L
    if not CL.is_zero():
        failures.append(("[C, L] = -L", _witness(CL)))
    if inv is not None:
        LC = apply(L, C)
        back = apply(L, apply(inv[2], C)) - C
        if not LC.is_zero() or not back.is_zero():
            failures.append(("C is vertical", _witness(LC if not LC.is_zero() else back)))
    if failures:
        names = ", ".join(f for f, _ in failures)
        raise LStructureError(f"not an L-structure: {names}", failures)
    rows, cols, A = inv
    return LStructure(n, L, C, tuple(rows), tuple(cols), A)


# -- semibasic forms and semisprays ------------------------------------------------------


def semibasic_residuals(K: VectorTensor, base: LStructure) -> dict[str, VectorTensor]:
    """Tensors that all vanish iff ``K`` is L-semibasic.

    ``L o K`` and, for every slot, ``K`` with a vertical argument ``L e_j``.
    """
    out = {"L o K": compose(base.L, K)}
    for s in range(K.degree):
        forms = [None] * K.degree
        forms[s] = base.L
        out[f"slot {s + 1} vertical"] = pullback_slots(K, *forms)
    return out


def is_semibasic(K: VectorTensor, base: LStructure) -> bool:
    _check_dim(K, base)
    return all(r.is_zero() for r in semibasic_residuals(K, base).values())


def _check_dim(obj, base: LStructure):
    if obj.dim != base.dim:
        raise ValueError(f"dimension mismatch: {obj.dim} vs {base.dim}")


def is_semispray(S: VecField, base: LStructure) -> bool:
    _check_dim(S, base)
    return (apply(base.L, S) - base.C).is_zero()


def is_spray(S: VecField, base: LStructure) -> bool:
    return is_semispray(S, base) and (lie_bracket(base.C, S) - S).is_zero()


# -- L-connections ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LConnection:
    """Nonlinear L-connection with its derived tensors.

    ``v``/``h`` are the vertical and horizontal projectors, ``F`` the
    almost-complex structure (``FL = h``, ``Fh = -L``), ``T`` the torsion
    ``[L, Gamma]/2``, ``Omega`` the curvature ``-[h, h]/2`` and ``t`` the
    strong torsion computed with ``base.semispray()``.
    """

    base: LStructure
    Gamma: VecForm1
    v: VecForm1
    h: VecForm1
    F: VecForm1
    T: VecForm2
    Omega: VecForm2
    t: VecForm1
    spray: VecField | None = None

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def L(self) -> VecForm1:
        return self.base.L

    @property
    def C(self) -> VecField:
        return self.base.C


def _almost_complex(base: LStructure, v: VecForm1, h: VecForm1) -> VecForm1:
    # F = -L + h A v with L A L = L: then FL = hAL = h and Fh = -L
    return compose(h, compose(base.right_inverse, v)) - base.L


def make_l_connection(base: LStructure, Gamma: VecForm1, spray: VecField | None = None) -> LConnection:
    """Validate ``L Gamma = L`` and ``Gamma L = -L`` and derive all tensors."""
    _check_dim(Gamma, base)
    L = base.L
    failures = []
    r1 = compose(L, Gamma) - L
    if not r1.is_zero():
        failures.append(("L Gamma = L", _witness(r1)))
    r2 = compose(Gamma, L) + L
    if not r2.is_zero():
        failures.append(("Gamma L = -L", _witness(r2)))
    if failures:
        names = ", ".join(f for f, _ in failures)
        raise ConnectionAxiomError(f"not an L-connection: {names}", failures)
    I = base.identity()
    half = Fraction(1, 2)
    v = (I - Gamma) * half
    h = (I + Gamma) * half
    F = _almost_complex(base, v, h)
    T = VecForm2(fn_bracket_11(L, Gamma).coeffs) * half
    Omega = VecForm2(fn_bracket_11(h, h).coeffs) * (-half)
    t = _strong_torsion(base, T, v, base.semispray())
    return LConnection(base, Gamma, v, h, F, T, Omega, t, spray)


def _strong_torsion(base: LStructure, T: VecForm2, v: VecForm1, S: VecField) -> VecForm1:
    return VecForm1(potential(T, S).coeffs) + lie_derivative(base.C, v)


def strong_torsion(conn: LConnection, semispray: VecField | None = None) -> VecForm1:
    """``t = T° + [C, v]`` with ``T°`` taken along the given semispray."""
    S = semispray if semispray is not None else conn.base.semispray()
    if not is_semispray(S, conn.base):
        raise NotASprayError("the potential needs an L-semispray (LS = C)")
    return _strong_torsion(conn.base, conn.T, conn.v, S)


def conservative(base: LStructure, S: VecField) -> LConnection:
    """The connection ``Gamma = [L, S]`` of an L-spray; homogeneous and torsion-free."""
    if not is_semispray(S, base):
        raise NotASprayError("LS != C", [("LS = C", _witness(apply(base.L, S) - base.C))])
    bad = lie_bracket(base.C, S) - S
    if not bad.is_zero():
        raise NotASprayError("[C, S] != S", [("[C, S] = S", _witness(bad))])
    conn = make_l_connection(base, fn_bracket_form_field(base.L, S), spray=S)
    hom = lie_derivative(base.C, conn.Gamma)
    if not hom.is_zero():
        raise ConnectionAxiomError("[L, S] is not homogeneous", [("[C, Gamma] = 0", _witness(hom))])
    if not conn.T.is_zero():
        raise ConnectionAxiomError("[L, S] has torsion", [("T = 0", _witness(conn.T))])
    return conn


def is_homogeneous(conn: LConnection) -> bool:
    return lie_derivative(conn.C, conn.Gamma).is_zero()


def is_strongly_flat(conn: LConnection) -> bool:
    return conn.Omega.is_zero() and conn.t.is_zero()

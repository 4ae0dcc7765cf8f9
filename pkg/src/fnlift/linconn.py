"""Linear connections given by Christoffel-type coefficients.

A :class:`LinearConnection` stores ``gamma[k, i, j]`` with
``D_{e_i} e_j = gamma[k, i, j] e_k``, i.e.
``D_X Y = X^i (d_i Y^k + gamma^k_{ij} Y^j) d_k``.  This module builds the
connection map ``K = DC`` and its vertical inverse, the induced
L-connection ``Gamma = I - 2 phi o K``, the almost-complex and almost-product
pair ``G``, ``H``, torsion and curvature tensors, and the extension of a
connection on the vertical bundle to a reducible connection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg
from ._linalg import NonPolynomialError
from .lgeometry import (
    GeometryError,
    LConnection,
    LStructure,
    make_l_connection,
    pullback_slots,
)
from .polyring import Poly
from .tensor_calc import (
    _LETTERS,
    VecField,
    VecForm1,
    VecForm2,
    Tensor13,
    VectorTensor,
    _directional,
    _zeros,
    apply,
    compose,
    wrap,
)

__all__ = [
    "RegularityError",
    "LinearConnection",
    "ConnectionMap",
    "cov_deriv",
    "nabla",
    "cov_deriv_tensor",
    "connection_map",
    "connection_map_K",
    "predicates",
    "predicate_residuals",
    "regularity_determinant",
    "induced_gamma",
    "induced_connection",
    "structures_GH",
    "bold_torsion",
    "bold_curvature",
    "almost_tangent_residuals",
    "extend_from_vertical",
    "reducibility_residuals",
    "vertical_action",
    "horizontal_completion_change",
]


class RegularityError(GeometryError):
    """The connection map is not invertible on the vertical bundle."""


class LinearConnection:
    """Linear connection on R^{2n} with polynomial coefficients."""

    __slots__ = ("gamma",)

    def __init__(self, gamma):
        if isinstance(gamma, VectorTensor):
            gamma = gamma.coeffs
        arr = VectorTensor(gamma).coeffs
        if arr.ndim != 3:
            raise ValueError(f"gamma must have shape (d, d, d), got {arr.shape}")
        self.gamma = arr

    @classmethod
    def flat(cls, dim: int) -> "LinearConnection":
        return cls(_zeros(dim, 2))

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def __add__(self, other):
        delta = other.gamma if isinstance(other, LinearConnection) else VectorTensor(other).coeffs
        return LinearConnection(self.gamma + delta)

    def __eq__(self, other):
        if not isinstance(other, LinearConnection):
            return NotImplemented
        return all(a == b for a, b in zip(self.gamma.flat, other.gamma.flat))

    __hash__ = None

    def difference(self, other: "LinearConnection") -> VectorTensor:
        """``D - D'`` as a (1,2) tensor."""
        return VectorTensor(self.gamma - other.gamma)

    def __repr__(self):
        return f"LinearConnection({VectorTensor(self.gamma)!r})"


def cov_deriv(D: LinearConnection, X: VecField, Y: VecField) -> VecField:
    """``D_X Y = X^i (d_i Y^k + gamma^k_{ij} Y^j) d_k``."""
    if X.dim != D.dim or Y.dim != D.dim:
        raise ValueError("dimension mismatch")
    out = _directional(X.coeffs, Y.coeffs) + np.einsum("i,kij,j->k", X.coeffs, D.gamma, Y.coeffs)
    return VecField(out)


def nabla(D: LinearConnection, A: VectorTensor) -> VectorTensor:
    """Total covariant derivative with the differentiation slot first.

    ``nabla(D, A)(W, X1..Xr) = (D_W A)(X1..Xr)``
    ``= D_W(A(X1..Xr)) - sum_s A(.., D_W Xs, ..)``.
    """
    r = A.degree
    idx = _LETTERS[1: r + 1]
    # d_w A^k_I
    grad = A.gradient()  # [k, I, w]
    out = np.einsum(f"k{idx}w->kw{idx}", grad)
    out = out + np.einsum(f"kwm,m{idx}->kw{idx}", D.gamma, A.coeffs)
    for s in range(r):
        src = list(idx)
        src[s] = "m"
        out = out - np.einsum(f"mw{idx[s]},k{''.join(src)}->kw{idx}", D.gamma, A.coeffs)
    return wrap(out)


def cov_deriv_tensor(D: LinearConnection, W: VecField, A: VectorTensor) -> VectorTensor:
    """``D_W A`` for a vector-valued form of any rank."""
    res = apply(nabla(D, A), W)
    if isinstance(A, VecForm2):
        return VecForm2(res.coeffs)
    return wrap(res.coeffs)


@dataclass(frozen=True, eq=False)
class ConnectionMap:
    """``K = DC`` and its inverse ``phi`` on the vertical bundle.

    ``phi`` is stored extended by zero on the complement ``{W : W[rows] = 0}``
    of the certified minor rows; only its action on ``Im L`` is meaningful.
    """

    K: VecForm1
    phi: VecForm1
    vertical_det: Poly


def _vertical_block(K: VecForm1, base: LStructure) -> np.ndarray:
    Vm = base.vertical_frame()
    KV = K.coeffs @ Vm
    return KV[list(base.minor_rows), :]


def connection_map(D: LinearConnection, base: LStructure) -> ConnectionMap:
    """Connection map of ``D`` and the vertical inverse ``phi``.

    Raises :class:`RegularityError` if ``K`` is singular on ``V(M)`` and
    :class:`NonPolynomialError` if ``phi`` has non-polynomial entries.
    """
    if D.dim != base.dim:
        raise ValueError("dimension mismatch")
    K = connection_map_K(D, base)
    N = _vertical_block(K, base)
    d = _linalg.det(N)
    if d.is_zero():
        raise RegularityError("connection map is singular on the vertical bundle", [("K invertible on V", None)])
    Ninv = _linalg.inverse(N)
    Vm = base.vertical_frame()
    sel = np.empty((base.n, base.dim), dtype=object)
    z = Poly.zero(base.dim)
    for idx in np.ndindex(sel.shape):
        sel[idx] = z
    for a, r in enumerate(base.minor_rows):
        sel[a, r] = Poly.const(base.dim, 1)
    phi = VecForm1(Vm @ Ninv @ sel)
    return ConnectionMap(K, phi, d)


def predicate_residuals(D: LinearConnection, base: LStructure) -> dict[str, VectorTensor]:
    """Residual tensors behind the almost-tangent and normal predicates."""
    K = connection_map_K(D, base)
    return {
        "DL": nabla(D, base.L),
        "D_LX C - LX": compose(K, base.L) - base.L,
    }


def connection_map_K(D: LinearConnection, base: LStructure) -> VecForm1:
    """``K(X) = D_X C`` as a vector 1-form."""
    C = base.C
    return VecForm1(C.gradient() + np.einsum("kjm,m->kj", D.gamma, C.coeffs))


def regularity_determinant(D: LinearConnection, base: LStructure) -> Poly:
    """Determinant of ``K`` on the vertical frame; nonzero iff ``D`` is L-regular (given DL = 0)."""
    return _linalg.det(_vertical_block(connection_map_K(D, base), base))


def predicates(D: LinearConnection, base: LStructure) -> dict[str, tuple[bool, object]]:
    """The four structural predicates, each with a witness when false."""
    res = predicate_residuals(D, base)
    out = {}
    at = res["DL"].first_nonzero()
    out["l_almost_tangent"] = (at is None, at)
    det = regularity_determinant(D, base)
    regular = at is None and not det.is_zero()
    out["l_regular"] = (regular, None if regular else ("det", str(det)) if at is None else at)
    nm = res["D_LX C - LX"].first_nonzero()
    out["l_normal"] = (at is None and nm is None, at or nm)
    if regular:
        try:
            Gamma = induced_gamma(D, base)
        except NonPolynomialError as exc:
            out["reducible"] = (False, str(exc))
        else:
            red = nabla(D, Gamma).first_nonzero()
            out["reducible"] = (red is None, red)
    else:
        out["reducible"] = (False, "not L-regular")
    return out


def induced_gamma(D: LinearConnection, base: LStructure) -> VecForm1:
    """``I - 2 phi o K`` without validating the L-connection axioms."""
    cm = connection_map(D, base)
    return base.identity() - compose(cm.phi, cm.K) * 2


def induced_connection(D: LinearConnection, base: LStructure) -> LConnection:
    """``Gamma = I - 2 phi o K`` validated as an L-connection.

    Requires ``D`` to be L-regular.
    """
    pred = nabla(D, base.L)
    if not pred.is_zero():
        raise RegularityError("D is not L-almost-tangent", [("DL = 0", pred.first_nonzero())])
    return make_l_connection(base, induced_gamma(D, base))


def structures_GH(conn: LConnection) -> tuple[VecForm1, VecForm1]:
    """Almost-complex ``G = -F`` and almost-product ``H = 2L + F``.

    These satisfy ``G(LX) = -hX, G(hX) = LX`` and ``H(LX) = hX, H(hX) = LX``.
    """
    return -conn.F, conn.L * 2 + conn.F


def bold_torsion(D: LinearConnection) -> VecForm2:
    """``T(X, Y) = D_X Y - D_Y X - [X, Y]``."""
    return VecForm2(D.gamma - np.swapaxes(D.gamma, 1, 2))


def bold_curvature(D: LinearConnection) -> Tensor13:
    """``R(X, Y)Z = D_X D_Y Z - D_Y D_X Z - D_[X,Y] Z``, stored as ``[k, X, Y, Z]``."""
    g = D.gamma
    dg = VectorTensor(g).gradient()  # [k, j, l, i] = d_i gamma^k_{jl}
    out = (
        np.einsum("kjli->kijl", dg)
        - np.einsum("kilj->kijl", dg)
        + np.einsum("kim,mjl->kijl", g, g)
        - np.einsum("kjm,mil->kijl", g, g)
    )
    return Tensor13(out)


def almost_tangent_residuals(D: LinearConnection, base: LStructure) -> dict[str, VectorTensor]:
    """Torsion and curvature identities of an L-almost-tangent connection."""
    L = base.L
    T = bold_torsion(D)
    R = bold_curvature(D)
    torsion = (
        pullback_slots(T, L, L)
        - compose(L, pullback_slots(T, L, None))
        - compose(L, pullback_slots(T, None, L))
    )
    curvature = pullback_slots(R, None, None, L) - compose(L, R)
    return {
        "T(LX,LY) - LT(LX,Y) - LT(X,LY)": torsion,
        "R(X,Y)LZ - LR(X,Y)Z": curvature,
    }


def reducibility_residuals(D: LinearConnection, conn: LConnection) -> dict[str, VectorTensor]:
    return {
        "D Gamma": nabla(D, conn.Gamma),
        "D F": nabla(D, conn.F),
        "D v": nabla(D, conn.v),
        "D h": nabla(D, conn.h),
    }


def _vertical_action(D: LinearConnection, Q: VecForm1) -> np.ndarray:
    """``E[k, i, j] = (D_{e_i}(Q e_j))^k``."""
    dQ = Q.gradient()  # [k, j, i]
    return np.einsum("kji->kij", dQ) + np.einsum("kim,mj->kij", D.gamma, Q.coeffs)


def extend_from_vertical(Dbar: LinearConnection, base: LStructure) -> LinearConnection:
    """Reducible connection agreeing with ``Dbar`` on vertical fields.

    ``D_X Y = F Dbar_X LY + Dbar_X LFY`` with ``F`` the almost-complex structure
    of ``Gamma = I - 2 phi o K`` built from ``Dbar``.  Only the action of
    ``Dbar`` on vertical fields is read.
    """
    L = base.L
    leak = compose(L, VectorTensor(_vertical_action(Dbar, L)))
    if not leak.is_zero():
        raise RegularityError("Dbar does not preserve the vertical bundle", [("L Dbar_X LY = 0", leak.first_nonzero())])
    conn = make_l_connection(base, induced_gamma(Dbar, base))
    F = conn.F
    EL = _vertical_action(Dbar, L)
    ELF = _vertical_action(Dbar, compose(L, F))
    gamma = np.einsum("km,mij->kij", F.coeffs, EL) + ELF
    return LinearConnection(gamma)


def vertical_action(D: LinearConnection, base: LStructure) -> VectorTensor:
    """``(X, Y) -> D_X LY`` as a (1,2) tensor."""
    return VectorTensor(_vertical_action(D, base.L))


def horizontal_completion_change(D: LinearConnection, base: LStructure, weight: Poly) -> LinearConnection:
    """Alter ``D`` only where it acts on non-vertical fields.

    Adds ``weight * e_0 (x) dz^0 (x) alpha`` with ``alpha = row of (I - L A)``
    so that ``alpha`` kills ``Im L``; the vertical action is unchanged.
    """
    d = base.dim
    I = base.identity()
    P = (I - compose(base.L, base.right_inverse)).coeffs
    row = next((P[r] for r in range(d) if any(not p.is_zero() for p in P[r])), None)
    delta = _zeros(d, 2)
    for j in range(d):
        delta[0, 0, j] = row[j] * weight
    return D + delta

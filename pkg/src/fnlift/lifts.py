"""Reducible L-lifts of L-connections and the identities of their curvature.

Given an L-connection ``Gamma`` and an L-semibasic vector 2-form ``B`` with
``B° + [C, h] = 0``, :func:`reducible_l_lift` builds the linear connection

    D_X Y = h[LY, F]X + L[vY, F]X + F B(X, Y) + B(X, FY),

where ``[Z, F]`` is the Lie derivative of ``F`` along ``Z``.  With ``B = 0``
and ``Gamma`` homogeneous this is the Berwald lift.  The remaining functions
return residual tensors of the torsion formula, the curvature formulas and
the Bianchi-type identities; each residual is zero exactly when the identity
holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lgeometry import (
    GeometryError,
    LConnection,
    LStructure,
    pullback_slots,
    semibasic_residuals,
)
from .linconn import LinearConnection, bold_curvature, bold_torsion, cov_deriv, nabla, vertical_action
from .tensor_calc import (
    VecField,
    VecForm1,
    VecForm2,
    Tensor13,
    VectorTensor,
    apply,
    compose,
    cyclic_sum,
    fn_bracket_11,
    interior_product,
    lie_bracket,
    lie_derivative,
    potential,
    wrap,
)

__all__ = [
    "LiftInputError",
    "NotHomogeneousError",
    "LiftInput",
    "CurvatureTriple",
    "make_lift_input",
    "lift_input_residuals",
    "reducible_l_lift",
    "reducible_l_lift_on_fields",
    "berwald_lift",
    "lift_torsion_residual",
    "curvature_triple",
    "curvature_formula_residuals",
    "p_formula_on_fields",
    "vertical_rules_on_fields",
    "classical_bianchi_residuals",
    "reduced_bianchi_residuals",
    "conservative_identity_residuals",
    "berwald_residuals",
    "lie_vertical_residual",
    "lie_commutation_on_fields",
    "equivalence_quantities",
    "horizontal_nijenhuis_residual",
]


class LiftInputError(GeometryError):
    pass


class NotHomogeneousError(GeometryError):
    pass


@dataclass(frozen=True, eq=False)
class LiftInput:
    conn: LConnection
    B: VecForm2


def lift_input_residuals(conn: LConnection, B: VecForm2) -> dict[str, VectorTensor]:
    """Residuals of the admissibility conditions on ``B``."""
    out = {f"B semibasic ({k})": r for k, r in semibasic_residuals(B, conn.base).items()}
    S = conn.base.semispray()
    out["B° + [C, h]"] = VecForm1(potential(B, S).coeffs) + lie_derivative(conn.C, conn.h)
    return out


def make_lift_input(conn: LConnection, B: VecForm2 | None = None) -> LiftInput:
    if B is None:
        B = VecForm2.zero(conn.dim)
    if not B.is_antisymmetric():
        raise LiftInputError("B is not antisymmetric", [("B(X,Y) = -B(Y,X)", None)])
    failures = []
    for name, r in lift_input_residuals(conn, B).items():
        hit = r.first_nonzero()
        if hit is not None:
            failures.append((name, {"index": list(hit[0]), "value": str(hit[1])}))
    if failures:
        kinds = {"potential" if n.startswith("B°") else "semibasic" for n, _ in failures}
        raise LiftInputError(f"inadmissible B ({', '.join(sorted(kinds))} condition failed)", failures)
    return LiftInput(conn, B)


def reducible_l_lift(inp: LiftInput) -> LinearConnection:
    """Coefficients of the reducible L-lift on the coordinate frame."""
    conn, B = inp.conn, inp.B
    L, v, h, F = conn.L, conn.v, conn.h, conn.F
    d = conn.dim
    gamma = np.empty((d, d, d), dtype=object)
    FB = compose(F, B).coeffs  # [k, i, j] = F B(e_i, e_j)
    BF = np.einsum("kim,mj->kij", B.coeffs, F.coeffs)  # B(e_i, F e_j)
    for j in range(d):
        a = compose(h, lie_derivative(L.column(j), F)).coeffs
        b = compose(L, lie_derivative(v.column(j), F)).coeffs
        gamma[:, :, j] = a + b + FB[:, :, j] + BF[:, :, j]
    return LinearConnection(gamma)


def reducible_l_lift_on_fields(conn: LConnection, B: VecForm2, X: VecField, Y: VecField) -> VecField:
    """The defining formula applied literally to two vector fields."""
    F = conn.F
    t1 = apply(conn.h, apply(lie_derivative(apply(conn.L, Y), F), X))
    t2 = apply(conn.L, apply(lie_derivative(apply(conn.v, Y), F), X))
    return t1 + t2 + apply(F, apply(B, X, Y)) + apply(B, X, apply(F, Y))


def berwald_lift(conn: LConnection) -> LinearConnection:
    """Reducible lift with ``B = 0`` of a homogeneous L-connection."""
    hom = lie_derivative(conn.C, conn.Gamma)
    if not hom.is_zero():
        hit = hom.first_nonzero()
        raise NotHomogeneousError(
            "the Berwald lift needs a homogeneous connection",
            [("[C, Gamma] = 0", {"index": list(hit[0]), "value": str(hit[1])})],
        )
    return reducible_l_lift(LiftInput(conn, VecForm2.zero(conn.dim)))


def lift_torsion_residual(D: LinearConnection, conn: LConnection, B: VecForm2) -> VectorTensor:
    """``T_D - (F o T + Omega + i_F B + 2 F o B)``."""
    F = conn.F
    rhs = compose(F, conn.T) + conn.Omega + interior_product(F, B) + compose(F, B) * 2
    return bold_torsion(D) - rhs


@dataclass(frozen=True, eq=False)
class CurvatureTriple:
    """``R(X,Y)Z = R_D(hX,hY)LZ``, ``P(X,Y)Z = R_D(hX,LY)LZ``, ``Q(X,Y)Z = R_D(LX,LY)LZ``."""

    R: Tensor13
    P: Tensor13
    Q: Tensor13


def curvature_triple(D: LinearConnection, conn: LConnection, full: Tensor13 | None = None) -> CurvatureTriple:
    Rb = bold_curvature(D) if full is None else full
    h, L = conn.h, conn.L
    return CurvatureTriple(
        Tensor13(pullback_slots(Rb, h, h, L).coeffs),
        Tensor13(pullback_slots(Rb, h, L, L).coeffs),
        Tensor13(pullback_slots(Rb, L, L, L).coeffs),
    )


def curvature_formula_residuals(
    D: LinearConnection, conn: LConnection, B: VecForm2, triple: CurvatureTriple
) -> dict[str, VectorTensor]:
    """Residual of the closed formula for ``R`` (indices ``[k, X, Y, Z]``)."""
    F, h, L, Om = conn.F, conn.h, conn.L, conn.Omega
    nO = nabla(D, Om).coeffs  # [k, w, a, b]
    nB = nabla(D, B).coeffs
    FB = compose(F, B).coeffs
    FT = compose(F, conn.T).coeffs
    rhs = (
        np.einsum("kwij,wl->kijl", nO, L.coeffs)
        + np.einsum("kwli,wj->kijl", nB, h.coeffs)
        - np.einsum("kwlj,wi->kijl", nB, h.coeffs)
        + np.einsum("kmj,mli->kijl", B.coeffs, FB)
        - np.einsum("kmi,mlj->kijl", B.coeffs, FB)
        + np.einsum("kml,mij->kijl", B.coeffs, FT)
    )
    return {"R - formula": Tensor13(triple.R.coeffs - rhs)}


def p_formula_on_fields(
    D: LinearConnection, conn: LConnection, B: VecForm2, X: VecField, Y: VecField, Z: VecField
) -> VecField:
    """Right-hand side of the closed formula for ``P(X, Y)Z``."""
    br = lie_bracket
    L, v, h, F = conn.L, conn.v, conn.h, conn.F
    hX, LY, LZ = apply(h, X), apply(L, Y), apply(L, Z)
    DB = apply(nabla(D, B), LY, Z, X)
    return (
        DB
        + apply(v, br(hX, apply(L, br(LY, Z))))
        + apply(v, br(LZ, br(hX, LY)))
        - apply(L, br(LY, apply(F, br(hX, LZ))))
        - apply(L, br(LZ, apply(F, br(hX, LY))))
    )


def vertical_rules_on_fields(
    D: LinearConnection, conn: LConnection, B: VecForm2, X: VecField, Y: VecField
) -> dict[str, VecField]:
    """Residuals of the rules fixing ``D`` on vertical fields."""
    br = lie_bracket
    L, v, h = conn.L, conn.v, conn.h
    LX, LY, hX, vX = apply(L, X), apply(L, Y), apply(h, X), apply(v, X)
    BXY = apply(B, X, Y)
    return {
        "D_LX LY - L[LX,Y]": cov_deriv(D, LX, LY) - apply(L, br(LX, Y)),
        "D_hX LY - v[hX,LY] - B(X,Y)": cov_deriv(D, hX, LY) - apply(v, br(hX, LY)) - BXY,
        "D_X LY - L[vX,Y] - v[hX,LY] - B(X,Y)": cov_deriv(D, X, LY)
        - apply(L, br(vX, Y))
        - apply(v, br(hX, LY))
        - BXY,
    }


def lie_commutation_on_fields(D: LinearConnection, conn: LConnection, X: VecField, Y: VecField) -> VecField:
    """``[C, D_Y LX] - D_[C,Y] LX - D_Y [C, LX]`` (Lie derivative of ``Y -> D_Y LX``)."""
    C, L = conn.C, conn.L
    LX = apply(L, X)
    return (
        lie_bracket(C, cov_deriv(D, Y, LX))
        - cov_deriv(D, lie_bracket(C, Y), LX)
        - cov_deriv(D, Y, lie_bracket(C, LX))
    )


def classical_bianchi_residuals(D: LinearConnection, full: Tensor13 | None = None) -> dict[str, VectorTensor]:
    """Both Bianchi identities of a linear connection with torsion."""
    T = bold_torsion(D)
    Rb = bold_curvature(D) if full is None else full
    TT = np.einsum("kml,mij->kijl", T.coeffs, T.coeffs)
    nT = nabla(D, T).coeffs
    first = cyclic_sum(Tensor13(Rb.coeffs - TT - nT))
    RT = np.einsum("kmlw,mij->kijlw", Rb.coeffs, T.coeffs)
    second = cyclic_sum(wrap(RT + nabla(D, Rb).coeffs))
    return {"first": first, "second": second}


def reduced_bianchi_residuals(D: LinearConnection, conn: LConnection, full: Tensor13 | None = None) -> dict[str, VectorTensor]:
    """The Bianchi identities with the torsion replaced by ``Omega``."""
    Rb = bold_curvature(D) if full is None else full
    Om = conn.Omega
    first = cyclic_sum(Tensor13(Rb.coeffs - nabla(D, Om).coeffs))
    ROm = np.einsum("kmlw,mij->kijlw", Rb.coeffs, Om.coeffs)
    second = cyclic_sum(wrap(ROm + nabla(D, Rb).coeffs))
    return {"first": first, "second": second}


def lie_vertical_residual(D: LinearConnection, base: LStructure) -> VecForm1:
    """``D_C LX - L[C, X]`` as a vector 1-form in ``X``."""
    C, L = base.C, base.L
    EL = vertical_action(D, base).coeffs  # [k, i, j] = D_{e_i} L e_j
    # L[C, e_j] = -L (d_j C)
    return VecForm1(np.einsum("i,kij->kj", C.coeffs, EL) + np.einsum("km,mj->kj", L.coeffs, C.gradient()))


def berwald_residuals(D: LinearConnection, conn: LConnection, triple: CurvatureTriple, semisprays) -> dict[str, VectorTensor]:
    """Identities of the Berwald lift of a homogeneous connection."""
    C, L, F, Om = conn.C, conn.L, conn.F, conn.Omega
    nO = nabla(D, Om)
    out = {
        "D_C LX - L[C,X]": lie_vertical_residual(D, conn.base),
        "T_D - (F o T + Omega)": bold_torsion(D) - (compose(F, conn.T) + Om),
        "R(X,Y)Z - (D_LZ Omega)(X,Y)": Tensor13(
            triple.R.coeffs - np.einsum("kwij,wl->kijl", nO.coeffs, L.coeffs)
        ),
        "D_C Omega - Omega": wrap(apply(nO, C).coeffs - Om.coeffs),
    }
    for s, S in enumerate(semisprays):
        out[f"R(X,Y)S{s + 1} - Omega(X,Y)"] = wrap(
            np.einsum("kijl,l->kij", triple.R.coeffs, S.coeffs) - Om.coeffs
        )
    return out


def conservative_identity_residuals(
    D: LinearConnection, conn: LConnection, triple: CurvatureTriple
) -> dict[str, VectorTensor]:
    """Cyclic and symmetry identities for the Berwald lift of a conservative connection.

    Four-slot residuals are indexed ``[k, X, Y, Z, W]`` where ``W`` is the
    argument of the endomorphism-valued sides.
    """
    h, L, F, Om = conn.h, conn.L, conn.F, conn.Omega
    R, P = triple.R, triple.P
    nR = nabla(D, R).coeffs  # [k, w, a, b, c]
    nP = nabla(D, P).coeffs
    nO = nabla(D, Om).coeffs
    FOm = compose(F, Om).coeffs
    hc, Lc = h.coeffs, L.coeffs

    lhs_b = np.einsum("kwjlc,wi->kijlc", nR, hc)
    rhs_b = np.einsum("kimc,mjl->kijlc", P.coeffs, FOm)
    c_lhs = np.einsum("kwijc,wl->kijlc", nR, Lc)
    c_rhs = np.einsum("kwilc,wj->kijlc", nP, hc) - np.einsum("kwjlc,wi->kijlc", nP, hc)
    d_lhs = np.einsum("kwijc,wl->kijlc", nP, Lc)
    d_rhs = np.einsum("kwilc,wj->kijlc", nP, Lc)
    Pc = P.coeffs
    return {
        "cyclic R(X,Y)Z": cyclic_sum(R),
        "cyclic (D_hX R)(Y,Z) - cyclic P(X, F Omega(Y,Z))": cyclic_sum(wrap(lhs_b - rhs_b)),
        "(D_LZ R)(X,Y) - (D_hY P)(X,Z) + (D_hX P)(Y,Z)": wrap(c_lhs - c_rhs),
        "(D_LZ P)(X,Y) - (D_LY P)(X,Z)": wrap(d_lhs - d_rhs),
        "P(X,Y)Z - P(Y,X)Z": Tensor13(Pc - np.einsum("kjil->kijl", Pc)),
        "P(X,Y)Z - P(Z,X)Y": Tensor13(Pc - np.einsum("klij->kijl", Pc)),
        "cyclic (D_hX Omega)(Y,Z)": cyclic_sum(Tensor13(np.einsum("kwjl,wi->kijl", nO, hc))),
        "cyclic (D_LX Omega)(Y,Z)": cyclic_sum(Tensor13(np.einsum("kwjl,wi->kijl", nO, Lc))),
        "cyclic (D_LX R)(Y,Z)": cyclic_sum(wrap(np.einsum("kwjlc,wi->kijlc", nR, Lc))),
    }


def equivalence_quantities(conn: LConnection, R: Tensor13) -> dict[str, VectorTensor]:
    """Quantities whose vanishing is mutually equivalent for conservative connections."""
    S = conn.base.semispray()
    return {
        "Omega°": VecForm1(potential(conn.Omega, S).coeffs),
        "Omega": conn.Omega,
        "R": R,
        "[F,F]": fn_bracket_11(conn.F, conn.F),
    }


def horizontal_nijenhuis_residual(conn: LConnection) -> VectorTensor:
    """``[F,F](hX,hY)/2 - (F o T + Omega)(X,Y)``."""
    FF = fn_bracket_11(conn.F, conn.F)
    hFF = pullback_slots(FF, conn.h, conn.h)
    return wrap(hFF.coeffs) * Fraction(1, 2) - (compose(conn.F, conn.T) + conn.Omega)

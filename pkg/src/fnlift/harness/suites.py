"""The statement catalog: every checked identity, its formula anchor and preconditions.

Each statement computes a list of *claims* about residual tensors:

* :class:`Vanishes` -- the tensor is identically zero;
* :class:`NonVanishing` -- at least one of the tensors is not identically zero;
* :class:`Equivalent` -- the groups vanish together or not at all (each
  group "holds" when all of its tensors vanish).

How "zero" is decided is left to the backend, so the catalog is shared by the
exact and the sampling backends.  Suites:

``structure``  axioms of the L-structure and of (semi)sprays;
``connection`` the L-connection, its projectors, F, torsion and curvature;
``regular``    an L-regular linear connection, its connection map, the
               induced connection, G and H, reducibility and the extension
               of a connection on the vertical bundle;
``lift``       the reducible L-lift of Gamma with the model's B;
``berwald``    the Berwald lift of a homogeneous / conservative Gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import _linalg
from ..lgeometry import make_l_connection, pullback_slots, semibasic_residuals, strong_torsion
from ..lifts import (
    berwald_residuals,
    classical_bianchi_residuals,
    conservative_identity_residuals,
    curvature_formula_residuals,
    equivalence_quantities,
    horizontal_nijenhuis_residual,
    lie_commutation_on_fields,
    lie_vertical_residual,
    lift_input_residuals,
    lift_torsion_residual,
    p_formula_on_fields,
    reduced_bianchi_residuals,
    reducible_l_lift_on_fields,
    vertical_rules_on_fields,
)
from ..linconn import (
    bold_torsion,
    connection_map,
    connection_map_K,
    cov_deriv,
    extend_from_vertical,
    horizontal_completion_change,
    induced_gamma,
    almost_tangent_residuals,
    nabla,
    reducibility_residuals,
    regularity_determinant,
    structures_GH,
    vertical_action,
)
from ..polyring import Poly
from ..tensor_calc import (
    VecField,
    VectorTensor,
    apply,
    compose,
    coordinate_field,
    fn_bracket_11,
    identity_form,
    lie_bracket,
    lie_derivative,
    potential,
    wrap,
)
from .context import Context

__all__ = ["Vanishes", "NonVanishing", "Equivalent", "Statement", "CATALOG", "SUITES", "select"]


@dataclass(frozen=True)
class Vanishes:
    label: str
    tensor: VectorTensor


@dataclass(frozen=True)
class NonVanishing:
    label: str
    tensors: tuple


@dataclass(frozen=True)
class Equivalent:
    label: str
    groups: tuple  # ((name, (tensor, ...)), ...)


@dataclass(frozen=True)
class Statement:
    """One checkable statement.

    ``formula`` marks displayed closed formulas checked against the direct
    curvature computation; their failures are reported as FAIL-FORMULA.
    """

    id: str
    anchor: str
    needs: tuple
    check: Callable[[Context], list]
    formula: bool = False

    @property
    def suite(self) -> str:
        return self.id.split(".", 1)[0]


CATALOG: dict[str, Statement] = {}


def statement(sid: str, anchor: str, needs: tuple = (), formula: bool = False):
    def register(fn):
        if sid in CATALOG:
            raise ValueError(f"duplicate statement id {sid}")
        CATALOG[sid] = Statement(sid, anchor, needs, fn, formula)
        return fn

    return register


def _vanish(residuals: dict[str, VectorTensor], prefix: str = "") -> list:
    return [Vanishes(prefix + name, T) for name, T in residuals.items()]


def _scalars(polys) -> VecField:
    """Pack scalar polynomials (determinants, minors) into a tensor for the backends."""
    return VecField(np.array(list(polys), dtype=object))


def _frame(d: int) -> list[VecField]:
    return [coordinate_field(d, i) for i in range(d)]


def _on_frame(fn, d: int, arity: int) -> VectorTensor:
    """Stack a field-valued function of ``arity`` fields over the coordinate frame."""
    E = _frame(d)
    out = np.empty((d,) + (d,) * arity, dtype=object)
    for idx in np.ndindex(*([d] * arity)):
        out[(slice(None),) + idx] = fn(*(E[i] for i in idx)).coeffs
    return wrap(out)


# -- structure -----------------------------------------------------------------------------------


@statement("structure.nilpotent", "L∘L = 0")
def _(ctx):
    L = ctx.model.l_form
    return [Vanishes("L∘L", compose(L, L))]


@statement("structure.rank", "rank L = n (Im L = Ker L)")
def _(ctx):
    M = ctx.model.l_form.coeffs
    out = [NonVanishing("n x n minors of L", (_scalars(d for _, _, d in _linalg.minors(M, ctx.n)),))]
    out.append(Vanishes("(n+1) x (n+1) minors of L", _scalars(d for _, _, d in _linalg.minors(M, ctx.n + 1))))
    return out


@statement("structure.integrable", "[L, L] = 0")
def _(ctx):
    L = ctx.model.l_form
    return [Vanishes("[L, L]", fn_bracket_11(L, L))]


@statement("structure.canonical_field", "[C, L] = -L")
def _(ctx):
    L, C = ctx.model.l_form, ctx.model.canonical_field
    return [Vanishes("[C, L] + L", lie_derivative(C, L) + L)]


@statement("structure.canonical_vertical", "LC = 0")
def _(ctx):
    return [Vanishes("LC", apply(ctx.model.l_form, ctx.model.canonical_field))]


@statement("structure.semispray", "LS = C", needs=("structure",))
def _(ctx):
    L, C = ctx.base.L, ctx.base.C
    return [
        Vanishes("LS - C", apply(L, ctx.semispray) - C),
        Vanishes("LS' - C", apply(L, ctx.other_semispray) - C),
    ]


@statement("structure.spray", "[C, S] = S", needs=("structure", "spray given"))
def _(ctx):
    S = ctx.model.spray
    return [Vanishes("[C, S] - S", lie_bracket(ctx.base.C, S) - S)]


# -- connection ---------------------------------------------------------------------------------


@statement("connection.axioms", "LΓ = L, ΓL = -L", needs=("candidate",))
def _(ctx):
    L, G = ctx.base.L, ctx.raw_gamma
    return [Vanishes("LΓ - L", compose(L, G) - L), Vanishes("ΓL + L", compose(G, L) + L)]


@statement("connection.projectors", "h + v = I, h∘h = h, v∘v = v, h∘v = v∘h = 0", needs=("connection",))
def _(ctx):
    h, v = ctx.conn.h, ctx.conn.v
    return [
        Vanishes("h + v - I", h + v - identity_form(ctx.dim)),
        Vanishes("h∘h - h", compose(h, h) - h),
        Vanishes("v∘v - v", compose(v, v) - v),
        Vanishes("h∘v", compose(h, v)),
        Vanishes("v∘h", compose(v, h)),
    ]


@statement("connection.projectors_and_L", "Lv = 0, vL = L, Lh = L, hL = 0", needs=("connection",))
def _(ctx):
    c = ctx.conn
    L, h, v = c.L, c.h, c.v
    return [
        Vanishes("Lv", compose(L, v)),
        Vanishes("vL - L", compose(v, L) - L),
        Vanishes("Lh - L", compose(L, h) - L),
        Vanishes("hL", compose(h, L)),
    ]


@statement("connection.almost_complex", "F∘F = -I", needs=("connection",))
def _(ctx):
    F = ctx.conn.F
    return [Vanishes("F∘F + I", compose(F, F) + identity_form(ctx.dim))]


@statement("connection.almost_complex_split", "FL = h, Fh = -L, LF = v", needs=("connection",))
def _(ctx):
    c = ctx.conn
    F, L, h, v = c.F, c.L, c.h, c.v
    return [
        Vanishes("FL - h", compose(F, L) - h),
        Vanishes("Fh + L", compose(F, h) + L),
        Vanishes("LF - v", compose(L, F) - v),
    ]


@statement("connection.torsion_semibasic", "T = ½[L, Γ] is L-semibasic", needs=("connection",))
def _(ctx):
    return _vanish(semibasic_residuals(ctx.conn.T, ctx.base), "T: ")


@statement("connection.curvature_semibasic", "Ω = -½[h, h] is L-semibasic", needs=("connection",))
def _(ctx):
    return _vanish(semibasic_residuals(ctx.conn.Omega, ctx.base), "Ω: ")


@statement("connection.strong_torsion_potential", "t = T° + [C, v] does not depend on the semispray", needs=("connection",))
def _(ctx):
    t1 = strong_torsion(ctx.conn, ctx.semispray)
    t2 = strong_torsion(ctx.conn, ctx.other_semispray)
    return [Vanishes("t(S) - t(S')", t1 - t2)]


@statement("connection.curvature_potential", "Ω° = i_S Ω does not depend on the semispray", needs=("connection",))
def _(ctx):
    Om = ctx.conn.Omega
    return [Vanishes("Ω°(S) - Ω°(S')", potential(Om, ctx.semispray) - potential(Om, ctx.other_semispray))]


@statement("connection.strong_torsion_criterion", "t = 0 ⟺ [C, Γ] = 0 and T = 0", needs=("connection",))
def _(ctx):
    c = ctx.conn
    return [
        Equivalent(
            "t = 0 ⟺ [C, Γ] = 0 ∧ T = 0",
            (("t = 0", (c.t,)), ("[C, Γ] = 0 ∧ T = 0", (lie_derivative(c.C, c.Gamma), c.T))),
        )
    ]


@statement("connection.curvature_homogeneity", "[C, Γ] = 0 ⟹ Ω homogeneous of degree 1, [C, Ω] = 0", needs=("homogeneous",))
def _(ctx):
    c = ctx.conn
    return [Vanishes("[C, Ω]", lie_derivative(c.C, c.Omega))]


@statement("connection.conservative", "Γ = [L, S] for a spray S ⟹ [C, Γ] = 0 and T = 0", needs=("spray",))
def _(ctx):
    c = ctx.conn
    return [Vanishes("[C, Γ]", lie_derivative(c.C, c.Gamma)), Vanishes("T", c.T)]


@statement("connection.horizontal_nijenhuis", "½[F, F](hX, hY) = (F∘T + Ω)(X, Y)", needs=("connection",))
def _(ctx):
    return [Vanishes("½[F,F](h·,h·) - F∘T - Ω", horizontal_nijenhuis_residual(ctx.conn))]


# -- regular linear connections --------------------------------------------------------------------


def _cmap(ctx):
    return connection_map(ctx.linear, ctx.base)


def _induced(ctx):
    return make_l_connection(ctx.base, induced_gamma(ctx.linear, ctx.base))


@statement("regular.phi_inverse", "φ∘K = K∘φ = I on V(M)", needs=("regular",))
def _(ctx):
    cm, L = _cmap(ctx), ctx.base.L
    return [
        Vanishes("φ∘K∘L - L", compose(cm.phi, compose(cm.K, L)) - L),
        Vanishes("K∘φ∘L - L", compose(cm.K, compose(cm.phi, L)) - L),
    ]


@statement("regular.induced_axioms", "Γ = I - 2φ∘K satisfies LΓ = L, ΓL = -L", needs=("regular",))
def _(ctx):
    L, G = ctx.base.L, induced_gamma(ctx.linear, ctx.base)
    return [Vanishes("LΓ - L", compose(L, G) - L), Vanishes("ΓL + L", compose(G, L) + L)]


@statement("regular.induced_projectors", "v = φ∘K, h = I - φ∘K: Lv = 0, vL = L, Lh = L, hL = 0", needs=("regular",))
def _(ctx):
    cm, L = _cmap(ctx), ctx.base.L
    v = compose(cm.phi, cm.K)
    h = identity_form(ctx.dim) - v
    return [
        Vanishes("Lv", compose(L, v)),
        Vanishes("vL - L", compose(v, L) - L),
        Vanishes("Lh - L", compose(L, h) - L),
        Vanishes("hL", compose(h, L)),
    ]


@statement("regular.connection_map_vertical", "K(vX) = K(X)", needs=("regular",))
def _(ctx):
    cm = _cmap(ctx)
    return [Vanishes("K∘v - K", compose(cm.K, compose(cm.phi, cm.K)) - cm.K)]


@statement("regular.induced_split", "Γ = h - v, Γh = hΓ = h", needs=("regular",))
def _(ctx):
    cm = _cmap(ctx)
    v = compose(cm.phi, cm.K)
    h = identity_form(ctx.dim) - v
    G = induced_gamma(ctx.linear, ctx.base)
    return [
        Vanishes("Γ - (h - v)", G - (h - v)),
        Vanishes("Γh - h", compose(G, h) - h),
        Vanishes("hΓ - h", compose(h, G) - h),
    ]


@statement("regular.induced_projectors_agree", "φ∘K = ½(I - Γ), I - φ∘K = ½(I + Γ)", needs=("regular",))
def _(ctx):
    cm = _cmap(ctx)
    c = _induced(ctx)
    v = compose(cm.phi, cm.K)
    return [Vanishes("φ∘K - v", v - c.v), Vanishes("I - φ∘K - h", identity_form(ctx.dim) - v - c.h)]


@statement("regular.G_on_frames", "G(LX) = -hX, G(hX) = LX", needs=("regular",))
def _(ctx):
    c = _induced(ctx)
    G, _H = structures_GH(c)
    return [Vanishes("G∘L + h", compose(G, c.L) + c.h), Vanishes("G∘h - L", compose(G, c.h) - c.L)]


@statement("regular.H_on_frames", "H(LX) = hX, H(hX) = LX", needs=("regular",))
def _(ctx):
    c = _induced(ctx)
    _G, H = structures_GH(c)
    return [Vanishes("H∘L - h", compose(H, c.L) - c.h), Vanishes("H∘h - L", compose(H, c.h) - c.L)]


@statement("regular.G_identities", "GL = -h, Gh = L, GL + LG = -I", needs=("regular",))
def _(ctx):
    c = _induced(ctx)
    G, _H = structures_GH(c)
    L = c.L
    return [
        Vanishes("GL + h", compose(G, L) + c.h),
        Vanishes("Gh - L", compose(G, c.h) - L),
        Vanishes("GL + LG + I", compose(G, L) + compose(L, G) + identity_form(ctx.dim)),
    ]


@statement("regular.H_identities", "GH = -HG, G + H = 2L, HL + LH = I", needs=("regular",))
def _(ctx):
    c = _induced(ctx)
    G, H = structures_GH(c)
    L = c.L
    return [
        Vanishes("GH + HG", compose(G, H) + compose(H, G)),
        Vanishes("G + H - 2L", G + H - L * 2),
        Vanishes("HL + LH - I", compose(H, L) + compose(L, H) - identity_form(ctx.dim)),
    ]


@statement("regular.GH_squares", "G² = -H² = -I, GH + HG = 0", needs=("regular",))
def _(ctx):
    G, H = structures_GH(_induced(ctx))
    I = identity_form(ctx.dim)
    return [
        Vanishes("G∘G + I", compose(G, G) + I),
        Vanishes("H∘H - I", compose(H, H) - I),
        Vanishes("GH + HG", compose(G, H) + compose(H, G)),
    ]


@statement("regular.gamma_from_GH", "Γ = HG", needs=("regular",))
def _(ctx):
    c = _induced(ctx)
    G, H = structures_GH(c)
    return [Vanishes("HG - Γ", compose(H, G) - c.Gamma)]


@statement("regular.homogeneity_transfer", "[C, Γ] = 0 ⟺ [C, K] = 0", needs=("regular",))
def _(ctx):
    C = ctx.base.C
    G = induced_gamma(ctx.linear, ctx.base)
    K = connection_map_K(ctx.linear, ctx.base)
    return [Equivalent("[C, Γ] = 0 ⟺ [C, K] = 0", (("[C, Γ] = 0", (lie_derivative(C, G),)), ("[C, K] = 0", (lie_derivative(C, K),))))]


@statement("regular.vertical_bracket", "[C, v] = φ∘[C, K]∘h", needs=("regular",))
def _(ctx):
    cm, C = _cmap(ctx), ctx.base.C
    c = _induced(ctx)
    rhs = compose(cm.phi, compose(lie_derivative(C, cm.K), c.h))
    return [Vanishes("[C, v] - φ∘[C,K]∘h", lie_derivative(C, c.v) - rhs)]


@statement(
    "regular.almost_tangent_torsion_curvature",
    "T(LX, LY) = LT(LX, Y) + LT(X, LY), R(X, Y)LZ = LR(X, Y)Z",
    needs=("structure", "linear", "almost tangent"),
)
def _(ctx):
    return _vanish(almost_tangent_residuals(ctx.linear, ctx.base))


@statement(
    "regular.normal_iff_torsion",
    "D_{LX}C = LX ⟺ T(C, LX) = 0 (when DL = 0 and D_C LX = L[C, X])",
    needs=("structure", "linear", "almost tangent", "vertical Lie rule"),
)
def _(ctx):
    D, base = ctx.linear, ctx.base
    K = connection_map_K(D, base)
    T = bold_torsion(D)
    TCL = pullback_slots(T, None, base.L)
    TCL = wrap(np.einsum("kij,i->kj", TCL.coeffs, base.C.coeffs))
    return [Equivalent("normal ⟺ T(C, L·) = 0", (("D_LX C = LX", (compose(K, base.L) - base.L,)), ("T(C, LX) = 0", (TCL,))))]


@statement("regular.reducible_equivalence", "DΓ = 0 ⟺ DF = 0 ⟺ Dv = Dh = 0", needs=("regular",))
def _(ctx):
    res = reducibility_residuals(ctx.linear, _induced(ctx))
    groups = (
        ("DΓ = 0", (res["D Gamma"],)),
        ("DF = 0", (res["D F"],)),
        ("Dv = Dh = 0", (res["D v"], res["D h"])),
    )
    return [Equivalent("DΓ = 0 ⟺ DF = 0 ⟺ Dv = Dh = 0", groups)]


@statement("regular.extension_reproduces", "D_X Y = F D̄_X LY + D̄_X LFY reproduces a reducible D", needs=("regular", "reducible"))
def _(ctx):
    D = ctx.linear
    E = extend_from_vertical(D, ctx.base)
    return [Vanishes("extension - D", E.difference(D))]


@statement(
    "regular.extension_properties",
    "the extension of D̄ agrees with D̄ on V(M), has DC = D̄C, is reducible and induces Γ̄",
    needs=("regular",),
)
def _(ctx):
    D, base = ctx.linear, ctx.base
    E = extend_from_vertical(D, base)
    Gbar = induced_gamma(D, base)
    return [
        Vanishes("E_X LY - D̄_X LY", vertical_action(E, base) - vertical_action(D, base)),
        Vanishes("EC - D̄C", connection_map_K(E, base) - connection_map_K(D, base)),
        Vanishes("E Γ̄", nabla(E, Gbar)),
        Vanishes("induced(E) - Γ̄", induced_gamma(E, base) - Gbar),
    ]


@statement("regular.extension_completion", "the extension depends only on the vertical action of D̄", needs=("regular",))
def _(ctx):
    D, base = ctx.linear, ctx.base
    d = ctx.dim
    other = horizontal_completion_change(D, base, Poly.var(d, 0) ** 2 + Poly.var(d, d - 1))
    return [Vanishes("extension(D̄') - extension(D̄)", extend_from_vertical(other, base).difference(extend_from_vertical(D, base)))]


@statement("regular.bianchi_classical", "𝔖 R(X,Y)Z = 𝔖{T(T(X,Y),Z) + (D_X T)(Y,Z)}, 𝔖{R(T(X,Y),Z) + (D_X R)(Y,Z)} = 0", needs=("linear",))
def _(ctx):
    return _vanish(classical_bianchi_residuals(ctx.linear), "Bianchi ")


# -- reducible L-lift -------------------------------------------------------------------------------


@statement("lift.input", "B is L-semibasic and B° + [C, h] = 0", needs=("connection", "lift form"))
def _(ctx):
    return _vanish(lift_input_residuals(ctx.conn, ctx.B))


def _lift_predicates(D, ctx, conn) -> list:
    base = ctx.base
    K = connection_map_K(D, base)
    det = regularity_determinant(D, base)
    return [
        Vanishes("DL (L-almost-tangent)", nabla(D, base.L)),
        NonVanishing("det K|V (L-regular)", (_scalars([det]),)),
        Vanishes("D_LX C - LX (L-normal)", compose(K, base.L) - base.L),
        Vanishes("DΓ (reducible)", nabla(D, conn.Gamma)),
    ]


@statement("lift.predicates", "the lift is L-almost-tangent, L-regular, L-normal and reducible", needs=("lift",))
def _(ctx):
    return _lift_predicates(ctx.lift, ctx, ctx.conn)


@statement("lift.projection", "I - 2φ∘K = Γ for the lift of Γ", needs=("lift",))
def _(ctx):
    return [Vanishes("induced - Γ", induced_gamma(ctx.lift, ctx.base) - ctx.conn.Gamma)]


@statement("lift.torsion_characterization", "T(LX, Y) = B(X, Y)", needs=("lift",))
def _(ctx):
    T = bold_torsion(ctx.lift)
    return [Vanishes("T(L·,·) - B", pullback_slots(T, ctx.base.L, None) - ctx.B)]


@statement("lift.vertical_rules", "D_{LX}LY = L[LX, Y], D_X LY = L[vX, Y] + v[hX, LY] + B(X, Y)", needs=("lift",))
def _(ctx):
    D, c, B = ctx.lift, ctx.conn, ctx.B
    names = list(vertical_rules_on_fields(D, c, B, *_frame(ctx.dim)[:2]))
    return [
        Vanishes(name, _on_frame(lambda X, Y, name=name: vertical_rules_on_fields(D, c, B, X, Y)[name], ctx.dim, 2))
        for name in names
    ]


@statement("lift.field_formula", "D_X Y = h[LY, F]X + L[vY, F]X + FB(X, Y) + B(X, FY)", needs=("lift",))
def _(ctx):
    D, c, B = ctx.lift, ctx.conn, ctx.B
    res = _on_frame(lambda X, Y: cov_deriv(D, X, Y) - reducible_l_lift_on_fields(c, B, X, Y), ctx.dim, 2)
    return [Vanishes("D_X Y - formula", res)]


@statement("lift.torsion_formula", "T = F∘T + Ω + i_F B + 2F∘B", needs=("lift",))
def _(ctx):
    return [Vanishes("T_D - formula", lift_torsion_residual(ctx.lift, ctx.conn, ctx.B))]


@statement("lift.symmetric_probe", "a symmetric L-lift exists ⟺ Γ is strongly flat", needs=("connection",))
def _(ctx):
    c = ctx.conn
    flat = c.Omega.is_zero() and c.t.is_zero()
    if flat:
        return [Vanishes("T of the Berwald lift", bold_torsion(ctx.berwald))]
    obstruction = compose(c.F, c.T) + c.Omega
    return [NonVanishing("F∘T + Ω or [C, h]", (obstruction, lie_derivative(c.C, c.h)))]


@statement("lift.curvature_Q", "Q(X, Y)Z = 0", needs=("lift",))
def _(ctx):
    return [Vanishes("Q", ctx.lift_triple.Q)]


@statement("lift.curvature_values", "R, P, Q take vertical values; R(X, Y) = -R(Y, X)", needs=("lift",))
def _(ctx):
    tr, L = ctx.lift_triple, ctx.base.L
    R = tr.R.coeffs
    return [
        Vanishes("L∘R", compose(L, tr.R)),
        Vanishes("L∘P", compose(L, tr.P)),
        Vanishes("L∘Q", compose(L, tr.Q)),
        Vanishes("R(X,Y) + R(Y,X)", wrap(R + np.einsum("kjil->kijl", R))),
    ]


@statement(
    "lift.curvature_R_formula",
    "R(X,Y)Z = (D_{LZ}Ω)(X,Y) + (D_{hY}B)(Z,X) - (D_{hX}B)(Z,Y) + B(FB(Z,X),Y) - B(FB(Z,Y),X) + B(FT(X,Y),Z)",
    needs=("lift",),
    formula=True,
)
def _(ctx):
    return _vanish(curvature_formula_residuals(ctx.lift, ctx.conn, ctx.B, ctx.lift_triple))


@statement(
    "lift.curvature_P_formula",
    "P(X,Y)Z = (D_{LY}B)(Z,X) + v[hX,L[LY,Z]] + v[LZ,[hX,LY]] - L[LY,F[hX,LZ]] - L[LZ,F[hX,LY]]",
    needs=("lift",),
    formula=True,
)
def _(ctx):
    D, c, B = ctx.lift, ctx.conn, ctx.B
    rhs = _on_frame(lambda X, Y, Z: p_formula_on_fields(D, c, B, X, Y, Z), ctx.dim, 3)
    return [Vanishes("P - formula", ctx.lift_triple.P - rhs)]


# -- Berwald lift ---------------------------------------------------------------------------------


@statement("berwald.predicates", "the Berwald lift is L-almost-tangent, L-regular, L-normal and reducible", needs=("homogeneous",))
def _(ctx):
    return _lift_predicates(ctx.berwald, ctx, ctx.conn)


@statement("berwald.round_trip", "Γ → Berwald lift → I - 2φ∘K returns Γ", needs=("homogeneous",))
def _(ctx):
    return [Vanishes("induced - Γ", induced_gamma(ctx.berwald, ctx.base) - ctx.conn.Gamma)]


@statement("berwald.characterization", "T(LX, Y) = 0", needs=("homogeneous",))
def _(ctx):
    return [Vanishes("T(L·,·)", pullback_slots(bold_torsion(ctx.berwald), ctx.base.L, None))]


@statement("berwald.extension", "the vertical action of the Berwald lift extends back to the Berwald lift", needs=("homogeneous",))
def _(ctx):
    D = ctx.berwald
    return [Vanishes("extension - D", extend_from_vertical(D, ctx.base).difference(D))]


@statement("berwald.lie_vertical", "D_C LX = L[C, X]", needs=("homogeneous",))
def _(ctx):
    return [Vanishes("D_C LX - L[C, X]", lie_vertical_residual(ctx.berwald, ctx.base))]


@statement("berwald.lie_commutation", "[C, DLX] = D[C, LX], read as [C, D_Y LX] - D_[C,Y] LX = D_Y [C, LX]", needs=("homogeneous",), formula=True)
def _(ctx):
    D, c = ctx.berwald, ctx.conn
    return [Vanishes("[C, D_Y LX] - D_[C,Y] LX - D_Y [C, LX]", _on_frame(lambda X, Y: lie_commutation_on_fields(D, c, X, Y), ctx.dim, 2))]


@statement("berwald.torsion", "T = F∘T + Ω", needs=("homogeneous",))
def _(ctx):
    c = ctx.conn
    return [Vanishes("T_D - F∘T - Ω", bold_torsion(ctx.berwald) - (compose(c.F, c.T) + c.Omega))]


@statement("berwald.torsion_conservative", "T = Ω, and T is L-semibasic", needs=("conservative",))
def _(ctx):
    T = bold_torsion(ctx.berwald)
    return [Vanishes("T_D - Ω", T - ctx.conn.Omega)] + _vanish(semibasic_residuals(T, ctx.base), "T_D: ")


def _berwald_battery(ctx) -> dict:
    return berwald_residuals(ctx.berwald, ctx.conn, ctx.berwald_triple, [ctx.semispray, ctx.other_semispray])


@statement("berwald.curvature_from_omega", "R(X, Y)Z = (D_{LZ}Ω)(X, Y)", needs=("conservative",))
def _(ctx):
    return [Vanishes(k, v) for k, v in _berwald_battery(ctx).items() if k.startswith("R(X,Y)Z")]


@statement("berwald.semispray_curvature", "R(X, Y)S = Ω(X, Y) for every semispray S", needs=("conservative",))
def _(ctx):
    return [Vanishes(k.replace("S1", "S").replace("S2", "S'"), v) for k, v in _berwald_battery(ctx).items() if k.startswith("R(X,Y)S")]


@statement("berwald.omega_scaling", "D_C Ω = Ω", needs=("conservative",))
def _(ctx):
    return [Vanishes(k, v) for k, v in _berwald_battery(ctx).items() if k.startswith("D_C Omega")]


@statement("berwald.bianchi_first", "𝔖 R(X,Y)Z = 𝔖 (D_X Ω)(Y,Z)", needs=("conservative",))
def _(ctx):
    res = reduced_bianchi_residuals(ctx.berwald, ctx.conn, ctx.berwald_curvature)
    return [Vanishes("first", res["first"])]


@statement("berwald.bianchi_second", "𝔖{R(Ω(X,Y),Z) + (D_X R)(Y,Z)} = 0", needs=("conservative",))
def _(ctx):
    res = reduced_bianchi_residuals(ctx.berwald, ctx.conn, ctx.berwald_curvature)
    return [Vanishes("second", res["second"])]


_CONSERVATIVE_ROWS = [
    ("berwald.R_cyclic", "𝔖 R(X,Y)Z = 0", "cyclic R(X,Y)Z"),
    ("berwald.R_derivative_cyclic", "𝔖 (D_{hX}R)(Y,Z) = 𝔖 P(X, FΩ(Y,Z))", "cyclic (D_hX R)(Y,Z) - cyclic P(X, F Omega(Y,Z))"),
    ("berwald.R_vertical_derivative", "(D_{LZ}R)(X,Y) = (D_{hY}P)(X,Z) - (D_{hX}P)(Y,Z)", "(D_LZ R)(X,Y) - (D_hY P)(X,Z) + (D_hX P)(Y,Z)"),
    ("berwald.P_vertical_derivative", "(D_{LZ}P)(X,Y) = (D_{LY}P)(X,Z)", "(D_LZ P)(X,Y) - (D_LY P)(X,Z)"),
    ("berwald.P_symmetric", "P is symmetric in its three variables", ("P(X,Y)Z - P(Y,X)Z", "P(X,Y)Z - P(Z,X)Y")),
    ("berwald.omega_horizontal_cyclic", "𝔖 (D_{hX}Ω)(Y,Z) = 0", "cyclic (D_hX Omega)(Y,Z)"),
    ("berwald.omega_vertical_cyclic", "𝔖 (D_{LX}Ω)(Y,Z) = 0", "cyclic (D_LX Omega)(Y,Z)"),
    ("berwald.R_vertical_cyclic", "𝔖 (D_{LX}R)(Y,Z) = 0", "cyclic (D_LX R)(Y,Z)"),
]


def _conservative_row(keys):
    keys = (keys,) if isinstance(keys, str) else keys

    def check(ctx):
        res = conservative_identity_residuals(ctx.berwald, ctx.conn, ctx.berwald_triple)
        return [Vanishes(k, res[k]) for k in keys]

    return check


for _sid, _anchor, _keys in _CONSERVATIVE_ROWS:
    statement(_sid, _anchor, needs=("conservative",), formula=True)(_conservative_row(_keys))


@statement("berwald.flatness_equivalence", "Ω° = 0 ⟺ Ω = 0 ⟺ R = 0 ⟺ [F, F] = 0 (⟺ h integrable, certified via Ω)", needs=("conservative",))
def _(ctx):
    q = equivalence_quantities(ctx.conn, ctx.berwald_triple.R)
    return [Equivalent("Ω° = 0 ⟺ Ω = 0 ⟺ R = 0 ⟺ [F,F] = 0", tuple((f"{k} = 0", (v,)) for k, v in q.items()))]


# -- selection ------------------------------------------------------------------------------------

SUITES = tuple(sorted({s.suite for s in CATALOG.values()}))


def select(spec: str | None) -> list[Statement]:
    """Statements for ``"all"``, suite names or statement ids (comma separated)."""
    if not spec or spec == "all":
        return sorted(CATALOG.values(), key=lambda s: s.id)
    chosen = {}
    for token in (t.strip() for t in spec.split(",")):
        if not token:
            continue
        if token in CATALOG:
            chosen[token] = CATALOG[token]
        elif token in SUITES:
            chosen.update({s.id: s for s in CATALOG.values() if s.suite == token})
        else:
            raise ValueError(f"unknown suite or statement id {token!r}")
    return sorted(chosen.values(), key=lambda s: s.id)


"""Lazily constructed geometric objects of a model, shared by all suite rows.

Construction never raises for geometric reasons: a failed axiom simply leaves
the dependent objects unavailable, and :meth:`Context.unmet` turns the failure
into a skip reason.  The axiom rows themselves are computed from the raw data,
so a broken model surfaces as FAIL rows with witnesses.
"""

from __future__ import annotations

from functools import cached_property

from .._linalg import NonPolynomialError
from ..lgeometry import (
    GeometryError,
    LConnection,
    LStructure,
    make_l_connection,
    validate_l_structure,
)
from ..lifts import (
    CurvatureTriple,
    LiftInput,
    berwald_lift,
    curvature_triple,
    lie_vertical_residual,
    lift_input_residuals,
    reducible_l_lift,
)
from ..linconn import LinearConnection, bold_curvature, connection_map, induced_connection, induced_gamma, nabla
from ..polyring import Poly
from ..tensor_calc import (
    Tensor13,
    VecField,
    VecForm2,
    apply,
    fn_bracket_form_field,
    lie_bracket,
    lie_derivative,
)
from .model import ModelSpec

__all__ = ["Context", "PRECONDITIONS"]


class Context:
    """Model objects for one suite run; every attribute is computed at most once."""

    def __init__(self, spec: ModelSpec):
        self.spec = spec
        self.model = spec.adapted()

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def dim(self) -> int:
        return self.model.dim

    # -- L-structure ----------------------------------------------------------------------------

    @cached_property
    def base(self) -> LStructure | None:
        try:
            return validate_l_structure(self.n, self.model.l_form, self.model.canonical_field)
        except (GeometryError, NonPolynomialError):
            return None

    @cached_property
    def semispray(self) -> VecField:
        """The model's spray if it has one, else the semispray built from ``C``."""
        S = self.model.spray
        return S if S is not None else self.base.semispray()

    @cached_property
    def other_semispray(self) -> VecField:
        """A second semispray, shifted by a vertical field with polynomial coefficients."""
        d = self.dim
        shift = VecField([Poly.var(d, i) ** 2 + Poly.var(d, (i + 1) % d) for i in range(d)])
        return self.base.semispray(shift) if self.model.spray is None else self.semispray + self.base.L(shift)

    # -- L-connection ---------------------------------------------------------------------------

    @cached_property
    def raw_gamma(self):
        """The L-connection candidate before validation (``None`` if it cannot be formed)."""
        m = self.model
        if m.connection is not None:
            return m.connection
        if m.spray is not None:
            return fn_bracket_form_field(self.model.l_form, m.spray)
        if self.base is None or self.given_regular is not None:
            return None
        return self.given_conn.Gamma if self.given_conn is not None else None

    @cached_property
    def conn(self) -> LConnection | None:
        if self.base is None or self.raw_gamma is None:
            return None
        try:
            return make_l_connection(self.base, self.raw_gamma, spray=self.model.spray)
        except GeometryError:
            return None

    @cached_property
    def homogeneous(self) -> bool:
        return lie_derivative(self.conn.C, self.conn.Gamma).is_zero()

    @cached_property
    def conservative(self) -> bool:
        return self.homogeneous and self.conn.T.is_zero()

    # -- a given linear connection ---------------------------------------------------------

    @cached_property
    def given_regular(self) -> str | None:
        """Why the given linear connection has no polynomial induced connection (or ``None``)."""
        try:
            connection_map(self.model.gamma, self.base)
        except GeometryError as exc:
            return str(exc)
        except NonPolynomialError as exc:
            return f"inverse connection map is not polynomial ({exc})"
        return None

    @cached_property
    def given_conn(self) -> LConnection | None:
        try:
            return induced_connection(self.model.gamma, self.base)
        except (GeometryError, NonPolynomialError):
            return None

    # -- lifts -----------------------------------------------------------------------------------

    @cached_property
    def B(self) -> VecForm2:
        if self.model.b_form is not None:
            return self.model.b_form
        return VecForm2.zero(self.dim)

    @cached_property
    def lift_admissible(self) -> bool:
        return all(r.is_zero() for r in lift_input_residuals(self.conn, self.B).values())

    @cached_property
    def lift(self) -> LinearConnection:
        """The reducible L-lift of ``conn`` with the model's ``B``."""
        return reducible_l_lift(LiftInput(self.conn, self.B))

    @cached_property
    def berwald(self) -> LinearConnection:
        return berwald_lift(self.conn)

    @cached_property
    def linear(self) -> LinearConnection:
        """The linear connection under study: the given one, or the lift."""
        return self.model.gamma if self.model.gamma is not None else self.lift

    @cached_property
    def lift_curvature(self) -> Tensor13:
        return bold_curvature(self.lift)

    @cached_property
    def lift_triple(self) -> CurvatureTriple:
        return curvature_triple(self.lift, self.conn, self.lift_curvature)

    @cached_property
    def berwald_curvature(self) -> Tensor13:
        if self.lift_admissible and self.B.is_zero():
            return self.lift_curvature
        return bold_curvature(self.berwald)

    @cached_property
    def berwald_triple(self) -> CurvatureTriple:
        return curvature_triple(self.berwald, self.conn, self.berwald_curvature)

    # -- preconditions ---------------------------------------------------------------------------

    def unmet(self, needs: tuple[str, ...]) -> str | None:
        """Reason the first unmet precondition in ``needs`` fails, or ``None``."""
        for need in needs:
            reason = PRECONDITIONS[need](self)
            if reason:
                return reason
        return None


def _need_structure(ctx: Context):
    if ctx.base is None:
        return "model data is not an L-structure"


def _need_candidate(ctx: Context):
    if _need_structure(ctx):
        return _need_structure(ctx)
    if ctx.model.gamma is not None and ctx.given_regular is not None:
        return f"given linear connection: {ctx.given_regular}"


def _need_connection(ctx: Context):
    if _need_candidate(ctx):
        return _need_candidate(ctx)
    if ctx.conn is None:
        return "Gamma violates the L-connection axioms"


def _need_spray_given(ctx: Context):
    if ctx.model.spray is None:
        return "model has no spray"


def _need_spray(ctx: Context):
    if _need_spray_given(ctx) or _need_connection(ctx):
        return _need_spray_given(ctx) or _need_connection(ctx)
    S = ctx.model.spray
    if not (apply(ctx.base.L, S) - ctx.base.C).is_zero() or not (lie_bracket(ctx.base.C, S) - S).is_zero():
        return "S is not a spray (LS = C and [C, S] = S)"


def _need_homogeneous(ctx: Context):
    if _need_connection(ctx):
        return _need_connection(ctx)
    if not ctx.homogeneous:
        return "Gamma is not homogeneous ([C, Gamma] != 0)"


def _need_conservative(ctx: Context):
    if _need_homogeneous(ctx):
        return _need_homogeneous(ctx)
    if not ctx.conservative:
        return "Gamma has torsion, so it is not conservative"


def _need_lift_form(ctx: Context):
    if ctx.model.b_form is None and _need_homogeneous(ctx):
        return "no lift form B given and B = 0 needs a homogeneous Gamma"


def _need_lift(ctx: Context):
    if _need_connection(ctx):
        return _need_connection(ctx)
    if not ctx.lift_admissible:
        what = "given B" if ctx.model.b_form is not None else "B = 0"
        return f"{what} is not admissible (B semibasic with B° + [C, h] = 0)"


def _need_linear(ctx: Context):
    if _need_structure(ctx):
        return _need_structure(ctx)
    if ctx.model.gamma is None:
        return _need_lift(ctx)


def _need_regular(ctx: Context):
    if _need_linear(ctx):
        return _need_linear(ctx)
    if ctx.model.gamma is not None and ctx.given_regular is not None:
        return f"given linear connection: {ctx.given_regular}"


def _need_almost_tangent(ctx: Context):
    if not nabla(ctx.linear, ctx.base.L).is_zero():
        return "D is not L-almost-tangent (DL != 0)"


def _need_vertical_lie_rule(ctx: Context):
    if not lie_vertical_residual(ctx.linear, ctx.base).is_zero():
        return "D_C LX != L[C, X]"


def _need_reducible(ctx: Context):
    if not nabla(ctx.linear, induced_gamma(ctx.linear, ctx.base)).is_zero():
        return "D is not reducible (DΓ != 0)"


PRECONDITIONS = {
    "structure": _need_structure,
    "candidate": _need_candidate,
    "connection": _need_connection,
    "spray given": _need_spray_given,
    "spray": _need_spray,
    "homogeneous": _need_homogeneous,
    "conservative": _need_conservative,
    "lift form": _need_lift_form,
    "lift": _need_lift,
    "linear": _need_linear,
    "regular": _need_regular,
    "almost tangent": _need_almost_tangent,
    "vertical Lie rule": _need_vertical_lie_rule,
    "reducible": _need_reducible,
}

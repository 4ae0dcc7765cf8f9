#!/usr/bin/env python3
"""From a spray to its L-connection, on the plane R^2 with coordinates (x, y).

Walks through the tangent-bundle L-structure (J, C), the flat spray
S = y d/dx and the spray S = y d/dx - 2 x y^2 d/dy, printing each object the
engine builds and checking the basic identities along the way.
"""

from __future__ import annotations

from fnlift.lgeometry import conservative, is_spray, is_strongly_flat, standard_structure
from fnlift.polyring import parse_poly
from fnlift.tensor_calc import VecField, apply, compose, coordinate_field, fn_bracket_11, identity_form, lie_bracket, lie_derivative_form


def check(label: str, ok: bool) -> None:
    print(f"  [{'ok' if ok else 'FAIL'}] {label}")


def show_form(name: str, A) -> None:
    ex, ey = coordinate_field(2, 0), coordinate_field(2, 1)
    for e, en in ((ex, "d/dx"), (ey, "d/dy")):
        X = apply(A, e)
        print(f"  {name}({en}) = ({X.coeffs[0].to_str()}) d/dx + ({X.coeffs[1].to_str()}) d/dy")


def main() -> None:
    base = standard_structure(1)
    J, C = base.L, base.C
    print("L-structure on TR: J d/dx = d/dy, J d/dy = 0, C = y d/dy")
    check("[C, J] = -J", lie_derivative_form(C, J) == -J)
    check("[J, J] = 0", fn_bracket_11(J, J).is_zero())

    for name, G in (("flat", "0"), ("quadratic", "x*y^2")):
        S = VecField([parse_poly("y", 2), parse_poly(G, 2) * -2], 2)
        print(f"\n{name} spray S = y d/dx - 2 ({G}) d/dy")
        check("LS = C", apply(J, S) == C)
        check("[C, S] = S", lie_bracket(C, S) == S)
        check("is a spray", is_spray(S, base))

        conn = conservative(base, S)
        print(" connection Γ = [J, S]:")
        show_form("Γ", conn.Gamma)
        print(" horizontal projector h = (I + Γ)/2:")
        show_form("h", conn.h)
        I = identity_form(2)
        check("Γ∘Γ = I", compose(conn.Gamma, conn.Gamma) == I)
        check("F∘F = -I, F∘L = h, L∘F = v", compose(conn.F, conn.F) == -I and compose(conn.F, J) == conn.h and compose(J, conn.F) == conn.v)
        check("torsion T = 0", conn.T.is_zero())
        check("curvature Ω = 0 and strong torsion t = 0", is_strongly_flat(conn))


if __name__ == "__main__":
    main()

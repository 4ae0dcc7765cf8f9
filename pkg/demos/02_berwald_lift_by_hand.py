#!/usr/bin/env python3
"""The Berwald lift of S = y d/dx - 2 x y^2 d/dy, checked against a hand computation.

For G = x y^2 the classical recipe gives N = dG/dy = 2xy, Berwald coefficients
G_yy = 2x and the adapted frame delta = d/dx - 2xy d/dy.  Expanding
D_{d/dx} d/dx = D_{delta + 2xy d/dy}(delta + 2xy d/dy) by the Leibniz rule gives

    D_{d/dx} d/dx = 2x d/dx + 2y d/dy,   D_{d/dx} d/dy = 2x d/dy,

and the connection map K = DC sends d/dx to 2xy d/dy.  The engine builds the
lift from Γ alone, with no coordinates-specific formulas.
"""

from __future__ import annotations

from fnlift.lgeometry import conservative, standard_structure
from fnlift.lifts import berwald_lift
from fnlift.linconn import connection_map, cov_deriv, induced_connection, predicates
from fnlift.polyring import parse_poly
from fnlift.tensor_calc import VecField, apply, coordinate_field


def fmt(X: VecField) -> str:
    return f"({X.coeffs[0].to_str()}) d/dx + ({X.coeffs[1].to_str()}) d/dy"


def main() -> None:
    base = standard_structure(1)
    S = VecField([parse_poly("y", 2), parse_poly("-2*x*y^2", 2)], 2)
    conn = conservative(base, S)
    D = berwald_lift(conn)
    ex, ey = coordinate_field(2, 0), coordinate_field(2, 1)

    print("Berwald lift coefficients:")
    for a, an in ((ex, "d/dx"), (ey, "d/dy")):
        for b, bn in ((ex, "d/dx"), (ey, "d/dy")):
            print(f"  D_{{{an}}} {bn} = {fmt(cov_deriv(D, a, b))}")

    cm = connection_map(D, base)
    print(f"\nconnection map K(d/dx) = {fmt(apply(cm.K, ex))}")
    print(f"               K(d/dy) = {fmt(apply(cm.K, ey))}")

    print("\nproperties of the lift:")
    for name, (ok, witness) in predicates(D, base).items():
        print(f"  {name:<22} {ok}" + (f"  witness {witness}" if witness else ""))
    back = induced_connection(D, base)
    print(f"  induced connection recovers Γ: {back.Gamma == conn.Gamma}")


if __name__ == "__main__":
    main()

"""Exact Frölicher-Nijenhuis calculus for L-connections and their linear lifts."""

from .lgeometry import (
    GeometryError,
    LConnection,
    LStructure,
    conservative,
    make_l_connection,
    standard_structure,
    validate_l_structure,
)
from .lifts import berwald_lift, curvature_triple, make_lift_input, reducible_l_lift
from .linconn import (
    LinearConnection,
    bold_curvature,
    bold_torsion,
    connection_map,
    cov_deriv,
    induced_connection,
)
from .polyring import Poly, parse_poly
from .tensor_calc import (
    Tensor13,
    VecField,
    VecForm1,
    VecForm2,
    VectorTensor,
    apply,
    compose,
    cyclic_sum,
    fn_bracket_11,
    fn_bracket_form_field,
    interior_product,
    lie_bracket,
    lie_derivative,
    potential,
)

__version__ = "0.1.0"

__all__ = [
    "GeometryError",
    "LConnection",
    "LStructure",
    "LinearConnection",
    "Poly",
    "Tensor13",
    "VecField",
    "VecForm1",
    "VecForm2",
    "VectorTensor",
    "apply",
    "berwald_lift",
    "bold_curvature",
    "bold_torsion",
    "compose",
    "connection_map",
    "conservative",
    "cov_deriv",
    "curvature_triple",
    "cyclic_sum",
    "fn_bracket_11",
    "fn_bracket_form_field",
    "induced_connection",
    "interior_product",
    "lie_bracket",
    "lie_derivative",
    "make_l_connection",
    "make_lift_input",
    "parse_poly",
    "potential",
    "reducible_l_lift",
    "standard_structure",
    "validate_l_structure",
]

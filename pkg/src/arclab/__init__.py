"""Computational tools for arcs in finite projective spaces."""

from .gf import GF, FieldElem, field_create, field_of_order
from .arc import (
    Arc,
    OPolynomial,
    dual_arc,
    extensions,
    glynn_arc,
    hyperoval,
    is_arc,
    kestenband_arc,
    nrc,
    segre_3space,
    special_arc,
    twelve_arc,
)
from .codes import LinearCode, code_from_arc, dual_code, min_distance, rs_code
from .tangent import build_scaled_system, g_value, sum_equation, delta_equation
from .envelope import complete_via_envelope, linear_factors, sbbt_envelope, verify_planar_tensor, vanishing_forms
from .extend import build_pn, extendability_verdict
from .classify import canonical_form, census, equivalent, is_conic_arc

__all__ = [
    "GF", "FieldElem", "field_create", "field_of_order",
    "Arc", "OPolynomial", "dual_arc", "extensions", "glynn_arc", "hyperoval", "is_arc",
    "kestenband_arc", "nrc", "segre_3space", "special_arc", "twelve_arc",
    "LinearCode", "code_from_arc", "dual_code", "min_distance", "rs_code",
    "build_scaled_system", "g_value", "sum_equation", "delta_equation",
    "complete_via_envelope", "linear_factors", "sbbt_envelope", "verify_planar_tensor", "vanishing_forms",
    "build_pn", "extendability_verdict",
    "canonical_form", "census", "equivalent", "is_conic_arc",
]
__version__ = "0.1.0"

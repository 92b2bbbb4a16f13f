"""Finite-field core: GF(p^n) arithmetic, subfields, linearized maps."""

from .field import (
    DEFAULT_LOGTABLE_CAP,
    FieldCtx,
    FieldElement,
    FieldSpec,
    add,
    divisors,
    field_from_json,
    frobenius,
    in_subfield,
    inv,
    is_irreducible,
    is_prime,
    make_field,
    mul,
    power,
    smallest_irreducible,
)
from .linearized import DualProjection, LinearizedPoly, dual_projection, eval_linearized
from .subfield import SubfieldView, subfield_coords

__all__ = [
    "DEFAULT_LOGTABLE_CAP",
    "DualProjection",
    "FieldCtx",
    "FieldElement",
    "FieldSpec",
    "LinearizedPoly",
    "SubfieldView",
    "add",
    "divisors",
    "dual_projection",
    "eval_linearized",
    "field_from_json",
    "frobenius",
    "in_subfield",
    "inv",
    "is_irreducible",
    "is_prime",
    "make_field",
    "mul",
    "power",
    "smallest_irreducible",
    "subfield_coords",
]

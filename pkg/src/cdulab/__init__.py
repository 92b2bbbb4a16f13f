"""Exhaustive c-differential uniformity of functions over finite fields.

Field arithmetic, function tables, subfield-piecewise constructions, a c-DDT
engine with numba kernels, and a registry that checks published bounds
against exhaustive counts.
"""

from .constructions import (
    PieceSpec,
    concat,
    gold,
    gold_shift,
    gold_shift_closed_form,
    inverse_perm,
    kasami,
    kasami_modified,
    piecewise_chain,
    piecewise_three,
    piecewise_two,
    power_map,
)
from .engine import c_ddt, c_uniformity, nonlinearity, solution_locus, uniformity_profile, walsh
from .func import FunctionTable, UnivariatePoly, algebraic_degree, from_poly, interpolate, is_permutation
from .gf import DualProjection, FieldCtx, LinearizedPoly, SubfieldView, dual_projection, make_field
from .verify import Claim, VerificationReport, check_h1_h2, check_no_outside_solutions, verify_bound, verify_concat

__version__ = "0.1.0"

__all__ = [
    "Claim",
    "DualProjection",
    "FieldCtx",
    "FunctionTable",
    "LinearizedPoly",
    "PieceSpec",
    "SubfieldView",
    "UnivariatePoly",
    "VerificationReport",
    "algebraic_degree",
    "c_ddt",
    "c_uniformity",
    "check_h1_h2",
    "check_no_outside_solutions",
    "concat",
    "dual_projection",
    "from_poly",
    "gold",
    "gold_shift",
    "gold_shift_closed_form",
    "interpolate",
    "inverse_perm",
    "is_permutation",
    "kasami",
    "kasami_modified",
    "make_field",
    "nonlinearity",
    "piecewise_chain",
    "piecewise_three",
    "piecewise_two",
    "power_map",
    "solution_locus",
    "uniformity_profile",
    "verify_bound",
    "verify_concat",
    "walsh",
]

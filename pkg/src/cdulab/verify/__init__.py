"""Claim registry, hypothesis predicates and suite runner."""

from .claims import (
    REGISTRY,
    Ingredients,
    check_h1_h2,
    check_no_outside_solutions,
    parse_cset,
    verify_bound,
    verify_concat,
)
from .report import Claim, Hypotheses, VerificationReport
from .suite import load_suite, run_suite

__all__ = [
    "REGISTRY",
    "Claim",
    "Hypotheses",
    "Ingredients",
    "VerificationReport",
    "check_h1_h2",
    "check_no_outside_solutions",
    "load_suite",
    "parse_cset",
    "run_suite",
    "verify_bound",
    "verify_concat",
]

"""Finite presented Boolean algebras, valuation functions and related checks."""

from ._core import (
    InconsistentError,
    ParseError,
    PreconditionError,
    Presentation,
    ValuationFunction,
    algebra_of,
    canonical_extension,
    check_model,
    derive_closure,
    induced_valuation,
    invariants,
    is_consistent,
    merge,
    rel,
    run_cli,
    sample_generic,
    standard_model_check,
    theorem_b_independence,
    theorem_b_partition,
)

__all__ = [
    "InconsistentError",
    "ParseError",
    "PreconditionError",
    "Presentation",
    "ValuationFunction",
    "algebra_of",
    "canonical_extension",
    "check_model",
    "derive_closure",
    "induced_valuation",
    "invariants",
    "is_consistent",
    "merge",
    "rel",
    "run_cli",
    "sample_generic",
    "standard_model_check",
    "theorem_b_independence",
    "theorem_b_partition",
]

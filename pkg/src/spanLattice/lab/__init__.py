"""Truncated double-sequence laboratory: the uo-versus-order counterexample and detectors."""

from .double_array import DoubleArray
from .counterexample import (
    Counterexample,
    CounterexampleParams,
    ObstructionCertificate,
    build_counterexample,
    default_strikes,
    evaluate_on_counterexample,
    obstruction_certificate,
    random_row_law_trials,
    row_limit_law,
    row_limit_residuals,
    sample_e_approximants,
    validate_row_law,
    xkj,
    xkj_expression,
    xkj_identities_hold,
    y_sequence,
    yj,
    yj_expression,
)
from .detectors import convergence_detect, summable_order_null
from .results import ConvergenceWitness, SummabilityReport

__all__ = [
    # Arrays and parameters
    "DoubleArray",
    "CounterexampleParams",
    "Counterexample",
    # Construction
    "build_counterexample",
    "default_strikes",
    "xkj",
    "xkj_expression",
    "xkj_identities_hold",
    "yj",
    "yj_expression",
    "y_sequence",
    # Row-limit law
    "row_limit_law",
    "row_limit_residuals",
    "validate_row_law",
    "evaluate_on_counterexample",
    "random_row_law_trials",
    # Obstruction
    "ObstructionCertificate",
    "obstruction_certificate",
    "sample_e_approximants",
    # Detectors
    "convergence_detect",
    "summable_order_null",
    "ConvergenceWitness",
    "SummabilityReport",
]

"""Finite vector lattices: state spaces, payoffs and pointwise lattice operations."""

from .base import Payoff, StateSpace, same_space
from .arithmetic import format_number, parse_number, to_fraction
from .functions import (
    LATTICE_OPS,
    OPTION_KINDS,
    band_projection_sup,
    band_projection_unit,
    is_component,
    lattice_ops,
    option_payoff,
)
from .linalg import (
    SpanSolution,
    in_span,
    independent_indices,
    rank,
    reduced_basis,
    solve_in_span,
    span_contains,
    spans_equal,
)

__all__ = [
    # Core types
    "StateSpace",
    "Payoff",
    "same_space",
    # Operations
    "LATTICE_OPS",
    "OPTION_KINDS",
    "lattice_ops",
    "option_payoff",
    "is_component",
    "band_projection_unit",
    "band_projection_sup",
    # Linear algebra
    "SpanSolution",
    "rank",
    "independent_indices",
    "solve_in_span",
    "in_span",
    "span_contains",
    "spans_equal",
    "reduced_basis",
    # Number handling
    "to_fraction",
    "format_number",
    "parse_number",
]

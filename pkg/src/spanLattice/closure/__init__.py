"""Order closures of sublattices and approximation nets."""

from .results import ApproxReport
from .functions import (
    freudenthal_approx,
    is_ideal_sampled,
    is_order_closed,
    monotone_approximation,
    smallest_order_closed_sublattice,
    supremum_criterion,
    uo_to_order_stage,
)

__all__ = [
    # Results
    "ApproxReport",
    # Closures
    "smallest_order_closed_sublattice",
    "is_order_closed",
    "supremum_criterion",
    "is_ideal_sampled",
    # Approximation nets
    "uo_to_order_stage",
    "freudenthal_approx",
    "monotone_approximation",
]

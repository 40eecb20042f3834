from .config import Settings, get_settings
from .errors import (
    ArgumentError,
    DimensionError,
    DomainError,
    MeasurabilityError,
    SpanLatticeError,
    SpanningError,
)
from .lattice import Payoff, StateSpace, lattice_ops, option_payoff, is_component, band_projection_unit
from .sigma import Partition, sigma_of, is_measurable, measurable_via_components, closed_sublattice_representation
from .options import (
    Instrument,
    Portfolio,
    option_space_basis,
    butterfly,
    replicate,
    sublattice_membership,
    lattice_closure_oracle,
)
from .lab import DoubleArray, CounterexampleParams, build_counterexample, convergence_detect, summable_order_null
from .closure import (
    ApproxReport,
    uo_to_order_stage,
    smallest_order_closed_sublattice,
    freudenthal_approx,
    monotone_approximation,
)
from .io import MarketSpec, load_market


__all__ = [
    # Configuration and errors
    "Settings",
    "get_settings",
    "SpanLatticeError",
    "ArgumentError",
    "DimensionError",
    "DomainError",
    "MeasurabilityError",
    "SpanningError",
    # Lattice
    "StateSpace",
    "Payoff",
    "lattice_ops",
    "option_payoff",
    "is_component",
    "band_projection_unit",
    # Sigma-algebras
    "Partition",
    "sigma_of",
    "is_measurable",
    "measurable_via_components",
    "closed_sublattice_representation",
    # Options
    "Instrument",
    "Portfolio",
    "option_space_basis",
    "butterfly",
    "replicate",
    "sublattice_membership",
    "lattice_closure_oracle",
    # Convergence lab
    "DoubleArray",
    "CounterexampleParams",
    "build_counterexample",
    "convergence_detect",
    "summable_order_null",
    # Closures
    "ApproxReport",
    "uo_to_order_stage",
    "smallest_order_closed_sublattice",
    "freudenthal_approx",
    "monotone_approximation",
    # Markets
    "MarketSpec",
    "load_market",
]

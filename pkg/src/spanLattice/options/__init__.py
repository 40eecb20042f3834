"""Option spaces, replication by calls and puts, and generated sublattices."""

from .instruments import Instrument, Portfolio
from .expr import (
    Generator,
    Join,
    LatticeExpr,
    Meet,
    PositivePart,
    Scale,
    Sum,
    random_lattice_expr,
)
from .spanning import (
    Membership,
    OptionSpace,
    best_approximation,
    butterfly,
    option_space_basis,
    replicate,
    strike_grid,
    sublattice_membership,
)
from .oracle import is_sublattice, lattice_closure_oracle

__all__ = [
    # Instruments
    "Instrument",
    "Portfolio",
    # Expressions
    "LatticeExpr",
    "Generator",
    "Sum",
    "Scale",
    "Meet",
    "Join",
    "PositivePart",
    "random_lattice_expr",
    # Spanning
    "OptionSpace",
    "Membership",
    "strike_grid",
    "option_space_basis",
    "butterfly",
    "replicate",
    "best_approximation",
    "sublattice_membership",
    # Oracle
    "lattice_closure_oracle",
    "is_sublattice",
]

"""Finite sigma-algebras as partitions and measurability tests."""

from .partition import Partition
from .functions import (
    SublatticeRepresentation,
    closed_sublattice_representation,
    distinct_values,
    is_measurable,
    lambda_grid,
    level_groups,
    level_set_labels,
    measurable_subspace_basis,
    measurable_via_components,
    non_measurable_block,
    sigma_of,
)

__all__ = [
    # Types
    "Partition",
    "SublatticeRepresentation",
    # Generation
    "sigma_of",
    "level_groups",
    "level_set_labels",
    "distinct_values",
    # Measurability
    "is_measurable",
    "non_measurable_block",
    "measurable_via_components",
    "lambda_grid",
    "measurable_subspace_basis",
    # Sublattices
    "closed_sublattice_representation",
]

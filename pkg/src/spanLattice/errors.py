"""Exception hierarchy for spanLattice.

Every error is a ``ValueError`` so callers can keep catching the broad case.
"""

from __future__ import annotations
from typing import Any, Optional, Sequence


class SpanLatticeError(ValueError):
    """Base class for all spanLattice errors."""


class ConfigError(SpanLatticeError):
    """Invalid configuration value (environment or settings)."""


class DimensionError(SpanLatticeError):
    """Operands live on different state spaces or have different shapes."""


class DomainError(SpanLatticeError):
    """An input lies outside the domain of the operation."""


class LimitedLiabilityError(DomainError):
    """An asset with a negative payoff was given where f >= 0 is required."""


class DecomposeFirstError(DomainError):
    """Signed input given to an operation defined on positive elements.

    Split the input into positive and negative parts and treat each one.
    """


class ArgumentError(SpanLatticeError):
    """Malformed or inconsistent arguments."""


class InvalidParametersError(ArgumentError):
    """Counterexample parameters violate the required ordering chain."""


class UnknownGeneratorError(ArgumentError):
    """A lattice expression references a generator with no assignment."""


class ContractError(SpanLatticeError):
    """A precondition that must be established by another call is missing."""


class NotASublatticeError(SpanLatticeError):
    """A span that should be closed under lattice operations is not."""


class NonConvergenceError(SpanLatticeError):
    """An iterative closure did not stabilise within its iteration cap."""


class NoApproximationError(SpanLatticeError):
    """No approximating sequence exists inside the requested sublattice."""


class MarketFormatError(SpanLatticeError):
    """A market or portfolio file does not follow the documented format."""


class MeasurabilityError(SpanLatticeError):
    """A claim is not measurable with respect to the required partition.

    Parameters
    ----------
    message : str
        Human readable reason.
    block : sequence of int, optional
        A block of the partition on which the claim is not constant.
    """

    def __init__(self, message: str, block: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.block: Optional[tuple[int, ...]] = tuple(block) if block is not None else None

    def to_dict(self) -> dict:
        """Machine readable summary of the failure."""
        return {
            "status": "failure",
            "reason": "measurability",
            "message": str(self),
            "block": list(self.block) if self.block is not None else None,
        }


class SpanningError(MeasurabilityError):
    """A claim cannot be replicated by options on the given asset.

    Parameters
    ----------
    message : str
        Human readable reason.
    residual : float
        Max-norm residual of the best least-squares approximation.
    block : sequence of int, optional
        A level set of the asset on which the claim is not constant.
    approximation : Any, optional
        The best approximating payoff inside the option space.
    """

    def __init__(
        self,
        message: str,
        residual: float,
        block: Optional[Sequence[int]] = None,
        approximation: Any = None,
    ):
        super().__init__(message, block=block)
        self.residual: float = float(residual)
        self.approximation = approximation

    def to_dict(self) -> dict:
        """Machine readable summary of the failure."""
        return {
            "status": "failure",
            "reason": "spanning",
            "message": str(self),
            "residual": self.residual,
            "block": list(self.block) if self.block is not None else None,
        }

"""Runtime settings for spanLattice: tolerances and their environment overrides."""

from __future__ import annotations
import logging
import os
from dataclasses import dataclass

from .errors import ConfigError

logger = logging.getLogger(__name__)

TOLERANCE_ENV_VAR = "SPAN_LATTICE_TOLERANCE"


@dataclass(frozen=True)
class Settings:
    """
    Numerical tolerances used across the package.

    Attributes
    ----------
    tolerance : float
        Global comparison tolerance (components, signs, supports).
    level_tolerance : float
        Relative factor for merging level sets: two states merge iff
        ``|f_i - f_j| <= level_tolerance * (1 + max|f|)``.
    membership_tolerance : float
        Residual threshold for span membership and replication checks.
    probability_tolerance : float
        Sum-to-one tolerance for state spaces.
    market_probability_tolerance : float
        Sum-to-one tolerance for ingested market files.
    """

    tolerance: float = 1e-12
    level_tolerance: float = 1e-9
    membership_tolerance: float = 1e-9
    probability_tolerance: float = 1e-12
    market_probability_tolerance: float = 1e-9


def get_settings() -> Settings:
    """
    Build the active settings, honouring ``SPAN_LATTICE_TOLERANCE``.

    The environment is read on every call.

    Returns
    -------
    Settings
        Current settings.

    Examples
    --------
    >>> import os
    >>> os.environ["SPAN_LATTICE_TOLERANCE"] = "1e-10"
    >>> get_settings().tolerance
    1e-10
    """
    raw = os.environ.get(TOLERANCE_ENV_VAR)
    if raw is None or raw.strip() == "":
        return Settings()

    try:
        tolerance = float(raw)
    except ValueError:
        raise ConfigError(
            f"{TOLERANCE_ENV_VAR} must be a float, got {raw!r}"
        ) from None

    if not tolerance > 0:
        raise ConfigError(
            f"{TOLERANCE_ENV_VAR} must be positive, got {tolerance}"
        )

    logger.debug("Comparison tolerance overridden to %g", tolerance)
    return Settings(tolerance=tolerance)

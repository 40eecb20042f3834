"""Market specification files and deterministic table output."""

from __future__ import annotations
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

import pandas as pd

from .config import get_settings
from .errors import MarketFormatError
from .lattice import Payoff, StateSpace, format_number, to_fraction

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


@dataclass
class MarketSpec:
    """
    A finite market read from JSON.

    Probabilities are held as Fractions (renormalised to sum exactly to 1) so
    that both arithmetic modes can be built from the same file.

    Attributes
    ----------
    states : list of str
        State labels.
    probs : list of Fraction
        State probabilities.
    assets : dict
        Named asset payoffs (raw file values).
    claims : dict
        Named claim payoffs (raw file values).

    Examples
    --------
    >>> market = load_market("market.json")
    >>> f = market.payoff("f", exact=True)
    """

    states: list
    probs: list
    assets: dict = field(default_factory=dict)
    claims: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.states)

    def space(self, exact: bool = False) -> StateSpace:
        if exact:
            return StateSpace(n=self.n, probs=tuple(self.probs))
        return StateSpace(n=self.n, probs=tuple(float(p) for p in self.probs))

    def payoff(self, name: str, exact: bool = False, space: StateSpace = None) -> Payoff:
        """Asset or claim ``name`` as a payoff (assets take precedence)."""
        if name in self.assets:
            raw = self.assets[name]
        elif name in self.claims:
            raw = self.claims[name]
        else:
            known = sorted(set(self.assets) | set(self.claims))
            raise MarketFormatError(f"Unknown payoff {name!r}; market defines {known}")
        if space is None:
            space = self.space(exact)
        values = [to_fraction(v) for v in raw]
        if not exact:
            values = [float(v) for v in values]
        return Payoff(space, values, exact=exact)


def _check_vector(kind: str, name: str, values: Any, n: int) -> None:
    if not isinstance(values, list) or len(values) != n:
        raise MarketFormatError(f"{kind} {name!r} must be a list of {n} numbers")
    for v in values:
        try:
            to_fraction(v)
        except (TypeError, ValueError, ZeroDivisionError) as err:
            raise MarketFormatError(f"{kind} {name!r}: bad number {v!r}") from err


def market_from_dict(data: dict) -> MarketSpec:
    """
    Validate a decoded market document.

    Raises
    ------
    MarketFormatError
        Wrong version, mismatched lengths, non-positive probabilities or a
        probability total further than the market tolerance from 1.
    """
    if not isinstance(data, dict):
        raise MarketFormatError("Market file must hold a JSON object")
    if data.get("format_version") != FORMAT_VERSION:
        raise MarketFormatError(
            f"Unsupported market format_version {data.get('format_version')!r}, expected {FORMAT_VERSION}"
        )
    for key in ("states", "probs"):
        if key not in data:
            raise MarketFormatError(f"Market file is missing {key!r}")

    states = [str(s) for s in data["states"]]
    n = len(states)
    if n == 0:
        raise MarketFormatError("Market needs at least one state")
    _check_vector("probs", "probs", data["probs"], n)
    probs = [to_fraction(p) for p in data["probs"]]
    if any(p <= 0 for p in probs):
        raise MarketFormatError("Market probabilities must be strictly positive")

    total = sum(probs, Fraction(0))
    if abs(float(total) - 1.0) > get_settings().market_probability_tolerance:
        raise MarketFormatError(f"Market probabilities sum to {float(total)!r}, expected 1")
    if total != 1:
        logger.warning("Renormalising market probabilities (sum was %r)", float(total))
        probs = [p / total for p in probs]

    assets = data.get("assets", {}) or {}
    claims = data.get("claims", {}) or {}
    for kind, table in (("asset", assets), ("claim", claims)):
        if not isinstance(table, dict):
            raise MarketFormatError(f"{kind}s must be an object of named vectors")
        for name, values in table.items():
            _check_vector(kind, name, values, n)

    logger.debug("Market with %d states, %d assets, %d claims", n, len(assets), len(claims))
    return MarketSpec(states=states, probs=probs, assets=dict(assets), claims=dict(claims))


def load_market(filepath: Union[str, Path]) -> MarketSpec:
    """
    Read a market JSON file.

    Parameters
    ----------
    filepath : str or Path
        File with ``format_version``, ``states``, ``probs``, ``assets`` and
        ``claims``. Numbers may be JSON numbers or ``"p/q"`` strings.

    Returns
    -------
    MarketSpec
        Validated market.
    """
    try:
        data = json.loads(Path(filepath).read_text())
    except json.JSONDecodeError as err:
        raise MarketFormatError(f"{filepath}: invalid JSON ({err})") from err
    return market_from_dict(data)


def market_to_dict(market: MarketSpec) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "states": list(market.states),
        "probs": [format_number(p) for p in market.probs],
        "assets": {k: [format_number(to_fraction(v)) for v in vals] for k, vals in market.assets.items()},
        "claims": {k: [format_number(to_fraction(v)) for v in vals] for k, vals in market.claims.items()},
    }


def save_market(market: MarketSpec, filepath: Union[str, Path]) -> None:
    Path(filepath).write_text(json.dumps(market_to_dict(market), indent=2) + "\n")


def _format_cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    return format_number(value)


def format_frame(frame: pd.DataFrame) -> pd.DataFrame:
    """Copy of ``frame`` with every number passed through :func:`format_number`."""
    return frame.apply(lambda col: col.map(_format_cell))


def write_table(frame: pd.DataFrame, filepath: Union[str, Path]) -> None:
    """Write a table as CSV with deterministic number formatting."""
    format_frame(frame).to_csv(filepath, index=False, lineterminator="\n")
    logger.info("Wrote %s", filepath)


def frame_to_text(frame: pd.DataFrame) -> str:
    """Deterministic CSV text of a table (for stdout)."""
    return format_frame(frame).to_csv(index=False, lineterminator="\n")

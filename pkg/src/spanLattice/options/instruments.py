"""Call/put instruments and option portfolios."""

from __future__ import annotations
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Union

import pandas as pd

from ..errors import ArgumentError, DimensionError, MarketFormatError
from ..lattice import OPTION_KINDS, Payoff, StateSpace, option_payoff
from ..lattice.arithmetic import Scalar, coerce_scalar, format_number, parse_number

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Instrument:
    """
    A call ``(f - k)^+`` or put ``(k - f)^+`` on an underlying payoff.

    Attributes
    ----------
    kind : {'call', 'put'}
        Option type.
    strike : scalar
        Strike ``k``.
    underlying : Payoff
        Asset the option is written on.
    """

    kind: str
    strike: Scalar
    underlying: Payoff = field(repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in OPTION_KINDS:
            raise ArgumentError(f"Option kind must be 'call' or 'put', got {self.kind!r}")
        object.__setattr__(self, "strike", coerce_scalar(self.strike, self.underlying.is_exact))

    def payoff(self) -> Payoff:
        return option_payoff(self.underlying, self.strike, self.kind)

    @property
    def label(self) -> str:
        return f"{self.kind}@{format_number(self.strike)}"


@dataclass
class Portfolio:
    """
    Weighted list of options on one underlying.

    Attributes
    ----------
    positions : list of (Instrument, weight)
        Holdings.
    underlying : Payoff, optional
        Underlying asset; needed to evaluate an empty portfolio.

    Examples
    --------
    >>> f = Payoff(StateSpace.uniform(3), [0, 1, 2])
    >>> p = Portfolio([(Instrument("call", 1, f), 2.0)], underlying=f)
    >>> p.evaluate().tolist()
    [0.0, 0.0, 2.0]
    """

    positions: list = field(default_factory=list)
    underlying: Optional[Payoff] = None

    def __post_init__(self):
        if self.underlying is None and self.positions:
            self.underlying = self.positions[0][0].underlying
        for inst, _ in self.positions:
            if self.underlying is not None and not inst.underlying.space.same_as(self.underlying.space):
                raise DimensionError("All instruments must share the underlying state space")

    @property
    def is_exact(self) -> bool:
        return self.underlying is not None and self.underlying.is_exact

    def evaluate(self) -> Payoff:
        """Payoff of the portfolio: ``sum weight * instrument payoff``."""
        if self.underlying is None:
            raise ArgumentError("Cannot evaluate an empty portfolio without an underlying")
        total = Payoff.zero(self.underlying.space, exact=self.is_exact)
        for inst, weight in self.positions:
            total = total + inst.payoff() * weight
        return total

    def add(self, instrument: Instrument, weight: Scalar) -> Portfolio:
        return Portfolio(self.positions + [(instrument, weight)], underlying=self.underlying)

    def scaled(self, factor: Scalar) -> Portfolio:
        factor = coerce_scalar(factor, self.is_exact)
        return Portfolio(
            [(inst, w * factor) for inst, w in self.positions], underlying=self.underlying
        )

    def __add__(self, other: Portfolio) -> Portfolio:
        underlying = self.underlying if self.underlying is not None else other.underlying
        return Portfolio(self.positions + other.positions, underlying=underlying)

    def merged(self) -> Portfolio:
        """Aggregate positions with equal kind and strike; drop zero weights."""
        totals: dict = {}
        order: list = []
        for inst, w in self.positions:
            key = (inst.kind, inst.strike)
            if key not in totals:
                totals[key] = [inst, coerce_scalar(0, self.is_exact)]
                order.append(key)
            totals[key][1] = totals[key][1] + w
        kept = [(totals[k][0], totals[k][1]) for k in order if totals[k][1] != 0]
        kept.sort(key=lambda p: (float(p[0].strike), p[0].kind))
        return Portfolio(kept, underlying=self.underlying)

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self) -> Iterator:
        return iter(self.positions)

    def to_frame(self) -> pd.DataFrame:
        """One row per position: kind, strike, weight."""
        return pd.DataFrame(
            {
                "kind": [inst.kind for inst, _ in self.positions],
                "strike": [format_number(inst.strike) for inst, _ in self.positions],
                "weight": [format_number(w) for _, w in self.positions],
            }
        )

    def to_dict(self, underlying_name: str = "f") -> dict:
        """
        Versioned, JSON-ready description.

        Numbers are written as strings so the file is byte-deterministic.
        """
        values = self.underlying.values if self.underlying is not None else []
        return {
            "format_version": FORMAT_VERSION,
            "underlying": underlying_name,
            "exact": self.is_exact,
            "underlying_values": [format_number(v) for v in values],
            "positions": [
                {
                    "kind": inst.kind,
                    "strike": format_number(inst.strike),
                    "weight": format_number(w),
                    "underlying": underlying_name,
                }
                for inst, w in self.positions
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, space: StateSpace) -> Portfolio:
        """Rebuild a portfolio on ``space`` from :meth:`to_dict` output."""
        if data.get("format_version") != FORMAT_VERSION:
            raise MarketFormatError(
                f"Unsupported portfolio format_version {data.get('format_version')!r}"
            )
        exact = bool(data.get("exact", False))
        try:
            values = [parse_number(v, exact) for v in data["underlying_values"]]
            underlying = Payoff(space, values, exact=exact)
            positions = [
                (
                    Instrument(p["kind"], parse_number(p["strike"], exact), underlying),
                    parse_number(p["weight"], exact),
                )
                for p in data["positions"]
            ]
        except (KeyError, TypeError, ValueError) as err:
            raise MarketFormatError(f"Malformed portfolio: {err}") from err
        return cls(positions, underlying=underlying)

    def save(self, filepath: Union[str, Path], underlying_name: str = "f") -> None:
        """Write the portfolio as JSON."""
        Path(filepath).write_text(json.dumps(self.to_dict(underlying_name), indent=2) + "\n")
        logger.info("Wrote portfolio with %d positions to %s", len(self), filepath)

    @classmethod
    def load(cls, filepath: Union[str, Path], space: StateSpace) -> Portfolio:
        try:
            data = json.loads(Path(filepath).read_text())
        except json.JSONDecodeError as err:
            raise MarketFormatError(f"{filepath}: invalid JSON ({err})") from err
        return cls.from_dict(data, space)

    def __repr__(self) -> str:
        legs = ", ".join(f"{format_number(w)}*{inst.label}" for inst, w in self.positions)
        return f"Portfolio([{legs}])"

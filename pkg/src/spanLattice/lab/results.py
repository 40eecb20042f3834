"""Result data structures for the convergence detectors."""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt

TRUNCATION_CAVEAT = (
    "Verdict covers the represented prefix and truncation only; "
    "behaviour beyond them is not observed."
)


@dataclass
class ConvergenceWitness:
    """
    Evidence returned by :func:`convergence_detect`.

    Attributes
    ----------
    mode : str
        ``'uo'`` or ``'o'``.
    converged : bool
        The verdict.
    tail_deviation : np.ndarray
        ``tail_deviation[K]`` is ``max over coordinates of sup_{k >= K} |x_k - x|``:
        the tolerance schedule along the prefix.
    final_deviation : np.ndarray
        Per-coordinate deviation of the last element from the limit.
    tolerance : float
        Threshold applied to ``final_deviation``.
    dominator : Any, optional
        Entrywise sup of ``|x_k|`` (o-mode only).
    dominator_norm : float, optional
        Sup-norm of the dominator.
    cap : float, optional
        Bound the dominator norm had to respect (o-mode).
    window : int
        Number of trailing elements that had to lie within ``tolerance``.
    settle_index : np.ndarray, optional
        Per coordinate, the first 0-based index from which every later
        element stays within ``tolerance`` (``prefix_length`` if none).
    caveat : str
        Truncation disclaimer.
    """

    mode: str
    converged: bool
    tail_deviation: np.ndarray
    final_deviation: np.ndarray
    tolerance: float
    dominator: Any = None
    dominator_norm: Optional[float] = None
    cap: Optional[float] = None
    window: int = 1
    settle_index: Optional[np.ndarray] = None
    caveat: str = TRUNCATION_CAVEAT

    def __post_init__(self):
        if self.mode not in ("uo", "o"):
            raise ValueError(f"mode must be 'uo' or 'o', got {self.mode!r}")

    def __bool__(self) -> bool:
        return bool(self.converged)

    @property
    def prefix_length(self) -> int:
        return len(self.tail_deviation)

    def to_frame(self) -> pd.DataFrame:
        """Tolerance schedule: one row per tail start ``K``."""
        return pd.DataFrame(
            {"K": np.arange(1, self.prefix_length + 1), "tail_deviation": self.tail_deviation}
        )

    def plot(
        self,
        ax: Optional[plt.Axes] = None,
        figsize: tuple[float, float] = (8, 5),
        **kwargs,
    ) -> plt.Axes:
        """Plot the tail deviation schedule on a log scale."""
        if ax is None:
            _, ax = plt.subplots(figsize=figsize)
        k = np.arange(1, self.prefix_length + 1)
        ax.semilogy(k, np.maximum(self.tail_deviation, np.finfo(float).tiny), **kwargs)
        ax.set_xlabel("tail start K")
        ax.set_ylabel("sup_{k>=K} |x_k - x|")
        ax.set_title(f"{self.mode}-convergence witness")
        ax.grid(True, alpha=0.3)
        return ax

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "converged": self.converged,
            "tail_deviation": self.tail_deviation.tolist(),
            "tolerance": self.tolerance,
            "dominator_norm": self.dominator_norm,
            "cap": self.cap,
            "window": self.window,
            "last_settle_index": None if self.settle_index is None else int(np.max(self.settle_index)),
            "caveat": self.caveat,
        }

    def __repr__(self) -> str:
        extra = ""
        if self.mode == "o":
            extra = f", dominator_norm={self.dominator_norm}, cap={self.cap}"
        return f"ConvergenceWitness(mode={self.mode!r}, converged={self.converged}{extra})"


@dataclass
class SummabilityReport:
    """
    Outcome of :func:`summable_order_null`.

    Truth value is the verdict: the prefix is summable against the weights
    (within the budget, if any) and its lim-sup array vanishes.

    Attributes
    ----------
    order_null : bool
        The verdict.
    masses : np.ndarray
        ``φ(|x_n|)`` for each element.
    total_mass : float
        Sum of ``masses``.
    limsup : np.ndarray
        ``inf_k sup_{n >= k} |x_n|`` over the prefix, snapped to 0 where the
        weighted value is below ``tail_bound`` once the prefix is summable.
    budget : float, optional
        Summability budget.
    within_budget : bool
        Whether ``total_mass`` respects the budget.
    tail_start : int
        0-based index where the tail begins.
    tail_bound : float
        ``sum_{n >= tail_start} φ(|x_n|)``, the bound on ``φ(u)``.
    tail_fraction : float
        Share of ``total_mass`` the tail may carry.
    """

    order_null: bool
    masses: np.ndarray
    total_mass: float
    limsup: np.ndarray
    budget: Optional[float] = None
    within_budget: bool = True
    tail_start: int = 0
    tail_bound: float = 0.0
    tail_fraction: float = 1 / 16
    metadata: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.order_null)

    @property
    def summable(self) -> bool:
        """Tail mass within its share of the total."""
        return self.tail_bound <= self.tail_fraction * self.total_mass

    @property
    def tail_masses(self) -> np.ndarray:
        """``sum_{n >= k} φ(|x_n|)`` for each ``k``."""
        return np.cumsum(self.masses[::-1])[::-1]

    def __repr__(self) -> str:
        return (
            f"SummabilityReport(order_null={self.order_null}, "
            f"total_mass={self.total_mass:.6g}, tail_bound={self.tail_bound:.3g}, "
            f"within_budget={self.within_budget})"
        )

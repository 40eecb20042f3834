"""Result data structures for closure constructions."""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt

from ..lab.double_array import DoubleArray
from ..lattice import Payoff, StateSpace
from ..lattice.arithmetic import as_values

Element = Union[Payoff, DoubleArray]


@dataclass
class ApproxReport:
    """
    Approximating stages of a target element and their errors.

    Attributes
    ----------
    stages : list of Payoff or DoubleArray
        Approximants, in order.
    errors : list of float
        Sup-norm distance of each stage to ``target``.
    target : Payoff or DoubleArray
        Element being approximated.
    dominator : Payoff or DoubleArray, optional
        Common upper bound of the stages (order boundedness witness).
    envelope : list of float, optional
        Analytic error bound per stage.
    method : str, optional
        Name of the construction.
    metadata : dict, optional
        Additional information about the run.

    Examples
    --------
    >>> report = freudenthal_approx(g, part, levels=4)
    >>> print(f"Final error: {report.final_error}")
    >>> report.plot()
    >>> report.save('freudenthal.npz')
    """

    stages: list
    errors: list
    target: Any
    dominator: Any = None
    envelope: Optional[list] = None
    method: Optional[str] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        """Validate stage and error counts agree."""
        if len(self.stages) != len(self.errors):
            raise ValueError(
                f"Inconsistent lengths: stages={len(self.stages)}, errors={len(self.errors)}"
            )
        if self.envelope is not None and len(self.envelope) != len(self.errors):
            raise ValueError(
                f"Inconsistent lengths: envelope={len(self.envelope)}, errors={len(self.errors)}"
            )

    @property
    def num_stages(self) -> int:
        return len(self.stages)

    @property
    def final_error(self) -> float:
        return float(self.errors[-1]) if self.errors else float("nan")

    @property
    def converged(self) -> bool:
        """Last error vanishes (up to the global tolerance stored in metadata)."""
        tol = self.metadata.get("tolerance", 0.0)
        return bool(self.errors) and self.final_error <= tol

    def is_dominated(self) -> bool:
        """Every stage lies below the dominator."""
        if self.dominator is None:
            return False
        return all(s.dominated_by(self.dominator) for s in self.stages)

    def is_increasing(self, tol: float = 0.0) -> bool:
        """Stages increase entrywise (within ``tol``)."""
        return all(
            prev.dominated_by(nxt, tol=tol) for prev, nxt in zip(self.stages, self.stages[1:])
        )

    def errors_nonincreasing(self, tol: float = 0.0) -> bool:
        return all(b <= a + tol for a, b in zip(self.errors, self.errors[1:]))

    def plot(
        self,
        ax: Optional[plt.Axes] = None,
        figsize: tuple[float, float] = (10, 6),
        logy: bool = True,
        title: Optional[str] = None,
        **kwargs,
    ) -> plt.Axes:
        """
        Plot stage errors (and the envelope, when known).

        Parameters
        ----------
        ax : plt.Axes, optional
            Matplotlib axes. If None, creates new figure.
        figsize : tuple, optional
            Figure size in inches.
        logy : bool, optional
            Logarithmic error axis. Default is True.
        title : str, optional
            Plot title. If None, auto-generated from the method.
        **kwargs
            Additional arguments passed to ax.plot().

        Returns
        -------
        plt.Axes
            The matplotlib axes.
        """
        if ax is None:
            _, ax = plt.subplots(figsize=figsize)

        stage = np.arange(1, self.num_stages + 1)
        errors = np.asarray(self.errors, dtype=float)
        ax.plot(stage, errors, marker="o", label="error", **kwargs)
        if self.envelope is not None:
            ax.plot(stage, np.asarray(self.envelope, dtype=float), "--", label="envelope")
        if logy and np.all(errors > 0):
            ax.set_yscale("log")
        ax.set_xlabel("stage")
        ax.set_ylabel("sup-norm error")

        if title is None and self.method:
            title = f"Approximation - {self.method}"
        if title:
            ax.set_title(title)

        ax.legend()
        ax.grid(True, alpha=0.3)
        return ax

    def to_frame(self) -> pd.DataFrame:
        """One row per stage: error and envelope."""
        frame = pd.DataFrame(
            {
                "stage": np.arange(1, self.num_stages + 1),
                "error": np.asarray(self.errors, dtype=float),
            }
        )
        if self.envelope is not None:
            frame["envelope"] = np.asarray(self.envelope, dtype=float)
        return frame

    def to_dict(self) -> dict:
        """
        Export results to dictionary.

        Returns
        -------
        dict
            Dictionary with errors, envelope and metadata.
        """
        return {
            "method": self.method,
            "errors": [float(e) for e in self.errors],
            "envelope": None if self.envelope is None else [float(e) for e in self.envelope],
            "final_error": self.final_error,
            "metadata": self.metadata,
        }

    def save(self, filepath: str) -> None:
        """
        Save the report to a NumPy .npz file (values stored as float64).

        Parameters
        ----------
        filepath : str
            Path to save file (e.g., 'approx.npz').
        """
        if isinstance(self.target, DoubleArray):
            payload = dict(
                kind="double_array",
                stage_entries=np.stack([as_values(s.entries) for s in self.stages]),
                stage_limits=np.stack([as_values(s.limit_col) for s in self.stages]),
                target_entries=as_values(self.target.entries),
                target_limit=as_values(self.target.limit_col),
            )
        else:
            payload = dict(
                kind="payoff",
                stage_values=np.stack([as_values(s.values) for s in self.stages]),
                target_values=as_values(self.target.values),
                probs=as_values(self.target.space.probs),
            )
        np.savez(
            filepath,
            errors=np.asarray(self.errors, dtype=float),
            envelope=np.asarray(self.envelope if self.envelope is not None else [], dtype=float),
            method=self.method or "",
            **payload,
        )

    @classmethod
    def load(cls, filepath: str) -> ApproxReport:
        """
        Load a report written by :meth:`save`.

        Parameters
        ----------
        filepath : str
            Path to .npz file.

        Returns
        -------
        ApproxReport
            Loaded report (float arithmetic, no dominator).
        """
        data = np.load(filepath, allow_pickle=False)
        if str(data["kind"]) == "double_array":
            stages = [
                DoubleArray(e, lim) for e, lim in zip(data["stage_entries"], data["stage_limits"])
            ]
            target = DoubleArray(data["target_entries"], data["target_limit"])
        else:
            space = StateSpace(n=len(data["probs"]), probs=tuple(data["probs"].tolist()))
            stages = [Payoff(space, v) for v in data["stage_values"]]
            target = Payoff(space, data["target_values"])
        envelope = data["envelope"].tolist()
        return cls(
            stages=stages,
            errors=data["errors"].tolist(),
            target=target,
            envelope=envelope if envelope else None,
            method=str(data["method"]) or None,
        )

    def __repr__(self) -> str:
        return (
            f"ApproxReport(method={self.method!r}, stages={self.num_stages}, "
            f"final_error={self.final_error:.3e})"
        )

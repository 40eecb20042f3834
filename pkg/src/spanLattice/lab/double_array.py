"""Truncated double sequences with an explicit per-row limit column."""

from __future__ import annotations
import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt

from ..errors import DimensionError
from ..lattice.arithmetic import (
    Scalar,
    as_values,
    coerce_scalar,
    comparison_tolerance,
    format_number,
    is_exact_array,
    max_abs,
    zeros,
)

logger = logging.getLogger(__name__)


class DoubleArray:
    """
    Element ``(x_mn)`` of a double sequence space, truncated to M rows and N columns.

    Row ``m`` also carries ``limit_col[m]``, its value as ``n -> ∞``.
    Rows and columns are 1-based in the accessors, matching the usual
    ``x_{m1}`` notation.

    Parameters
    ----------
    entries : array-like
        M x N matrix.
    limit_col : array-like
        Length-M vector of row limits.
    exact : bool, optional
        Fraction arithmetic. If None, inferred from ``entries``.
    row_law_validated : bool, optional
        Set by the lab once ``limit_col[m] = m * x_{m1}`` has been checked.

    Examples
    --------
    >>> z = DoubleArray([[1, 0], [2, 0]], [1, 4])
    >>> float(z.entry(2, 1))
    2.0
    """

    __slots__ = ("entries", "limit_col", "row_law_validated")
    __array_ufunc__ = None

    def __init__(
        self,
        entries: Any,
        limit_col: Any,
        exact: Optional[bool] = None,
        row_law_validated: bool = False,
    ):
        if exact is None:
            exact = is_exact_array(np.asarray(entries))
        ent = as_values(entries, exact=exact)
        lim = as_values(limit_col, exact=exact)
        if ent.ndim != 2:
            raise DimensionError(f"entries must be a matrix, got shape {ent.shape}")
        if lim.shape != (ent.shape[0],):
            raise DimensionError(
                f"limit_col needs {ent.shape[0]} values, got shape {lim.shape}"
            )
        ent.flags.writeable = False
        lim.flags.writeable = False
        self.entries = ent
        self.limit_col = lim
        self.row_law_validated = row_law_validated

    @classmethod
    def zeros(cls, rows: int, cols: int, exact: bool = False) -> DoubleArray:
        return cls(zeros((rows, cols), exact), zeros(rows, exact), exact=exact)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def is_exact(self) -> bool:
        return is_exact_array(self.entries)

    def entry(self, m: int, n: int) -> Scalar:
        """Value ``x_{mn}`` (1-based)."""
        return self.entries[m - 1, n - 1]

    def limit(self, m: int) -> Scalar:
        """Row limit ``lim_n x_{mn}`` (1-based)."""
        return self.limit_col[m - 1]

    @property
    def first_column(self) -> np.ndarray:
        return self.entries[:, 0]

    def validated(self, flag: bool = True) -> DoubleArray:
        """Copy carrying the row-limit validation flag."""
        return DoubleArray(self.entries, self.limit_col, exact=self.is_exact, row_law_validated=flag)

    def _wrap(self, entries: np.ndarray, limit_col: np.ndarray) -> DoubleArray:
        return DoubleArray(entries, limit_col, exact=is_exact_array(entries))

    def _pair(self, other: DoubleArray):
        if not isinstance(other, DoubleArray):
            raise TypeError(f"Expected a DoubleArray, got {type(other).__name__}")
        if self.shape != other.shape:
            raise DimensionError(f"Shape mismatch: {self.shape} vs {other.shape}")
        if self.is_exact == other.is_exact:
            return self.entries, self.limit_col, other.entries, other.limit_col
        return (
            as_values(self.entries),
            as_values(self.limit_col),
            as_values(other.entries),
            as_values(other.limit_col),
        )

    # Linear and lattice structure; every result needs fresh validation.

    def __add__(self, other: DoubleArray) -> DoubleArray:
        a, la, b, lb = self._pair(other)
        return self._wrap(a + b, la + lb)

    def __sub__(self, other: DoubleArray) -> DoubleArray:
        a, la, b, lb = self._pair(other)
        return self._wrap(a - b, la - lb)

    def __neg__(self) -> DoubleArray:
        return self._wrap(-self.entries, -self.limit_col)

    def __mul__(self, scalar: Scalar) -> DoubleArray:
        if isinstance(scalar, DoubleArray):
            return NotImplemented
        s = coerce_scalar(scalar, self.is_exact)
        return self._wrap(self.entries * s, self.limit_col * s)

    __rmul__ = __mul__

    def meet(self, other: DoubleArray) -> DoubleArray:
        a, la, b, lb = self._pair(other)
        return self._wrap(np.minimum(a, b), np.minimum(la, lb))

    def join(self, other: DoubleArray) -> DoubleArray:
        a, la, b, lb = self._pair(other)
        return self._wrap(np.maximum(a, b), np.maximum(la, lb))

    __and__ = meet
    __or__ = join

    def pos_part(self) -> DoubleArray:
        zero = coerce_scalar(0, self.is_exact)
        return self._wrap(np.maximum(self.entries, zero), np.maximum(self.limit_col, zero))

    def neg_part(self) -> DoubleArray:
        return (-self).pos_part()

    def abs(self) -> DoubleArray:
        return self._wrap(np.abs(self.entries), np.abs(self.limit_col))

    __abs__ = abs

    # Queries

    def sup_norm(self) -> Scalar:
        """Max of ``|x_mn|`` over entries and the limit column."""
        return max(max_abs(self.entries), max_abs(self.limit_col))

    def is_nonnegative(self, tol: Optional[float] = None) -> bool:
        if tol is None:
            tol = comparison_tolerance(self.entries)
        return bool(np.all(self.entries >= -tol) and np.all(self.limit_col >= -tol))

    def dominated_by(self, other: DoubleArray, tol: Optional[float] = None) -> bool:
        a, la, b, lb = self._pair(other)
        if tol is None:
            tol = max(comparison_tolerance(a), comparison_tolerance(b))
        return bool(np.all(a <= b + tol) and np.all(la <= lb + tol))

    def allclose(self, other: DoubleArray, tol: Optional[float] = None) -> bool:
        a, la, b, lb = self._pair(other)
        if tol is None:
            tol = max(comparison_tolerance(a), comparison_tolerance(b))
        return bool(np.all(np.abs(a - b) <= tol) and np.all(np.abs(la - lb) <= tol))

    def to_float(self) -> DoubleArray:
        return DoubleArray(self.entries, self.limit_col, exact=False, row_law_validated=self.row_law_validated)

    # Export

    def to_frame(self, formatted: bool = False) -> pd.DataFrame:
        """
        Rows ``m = 1..M``, columns ``n=1..n=N`` plus ``limit``.

        With ``formatted=True`` every value is a deterministic string.
        """
        data = np.column_stack([self.entries, self.limit_col])
        if formatted:
            data = np.vectorize(format_number, otypes=[object])(data)
        elif self.is_exact:
            data = as_values(data)
        columns = [f"n={n}" for n in range(1, self.cols + 1)] + ["limit"]
        frame = pd.DataFrame(data, columns=columns)
        frame.index = pd.RangeIndex(1, self.rows + 1, name="m")
        return frame

    def to_csv(self, filepath: Union[str, Path]) -> None:
        """Write :meth:`to_frame` (formatted) as CSV."""
        self.to_frame(formatted=True).to_csv(filepath, lineterminator="\n")
        logger.info("Wrote %dx%d array to %s", self.rows, self.cols, filepath)

    def plot(
        self,
        ax: Optional[plt.Axes] = None,
        figsize: tuple[float, float] = (8, 6),
        cmap: str = "viridis",
        title: Optional[str] = None,
        **kwargs,
    ) -> plt.Axes:
        """
        Heat map of the entries with the limit column appended.

        Parameters
        ----------
        ax : plt.Axes, optional
            Matplotlib axes. If None, creates new figure.
        figsize : tuple, optional
            Figure size in inches.
        cmap : str, optional
            Colormap name.
        title : str, optional
            Plot title.
        **kwargs
            Additional arguments passed to ax.imshow().

        Returns
        -------
        plt.Axes
            The matplotlib axes.
        """
        if ax is None:
            _, ax = plt.subplots(figsize=figsize)

        data = self.to_frame().to_numpy(dtype=float)
        image = ax.imshow(data, cmap=cmap, aspect="auto", **kwargs)
        ax.figure.colorbar(image, ax=ax)
        ax.set_xlabel("column n (last: limit)")
        ax.set_ylabel("row m")
        ax.set_xticks(range(self.cols + 1))
        ax.set_xticklabels([str(n) for n in range(1, self.cols + 1)] + ["∞"])
        ax.set_yticks(range(self.rows))
        ax.set_yticklabels([str(m) for m in range(1, self.rows + 1)])
        if title:
            ax.set_title(title)
        return ax

    def __repr__(self) -> str:
        mode = "exact" if self.is_exact else "float"
        flag = ", validated" if self.row_law_validated else ""
        return f"DoubleArray({self.rows}x{self.cols}, {mode}{flag})"

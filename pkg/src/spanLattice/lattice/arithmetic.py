"""Float / rational value handling shared by payoffs and double arrays.

Exact mode stores values as numpy object arrays of ``fractions.Fraction``;
every lattice operation used in the package (``np.minimum``, ``np.maximum``,
``np.abs``, sums, scalar products) works unchanged on them.
"""

from __future__ import annotations
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Union

import numpy as np

from ..config import get_settings

Scalar = Union[int, float, Fraction]


def to_fraction(value: Any) -> Fraction:
    """
    Convert a number or a ``"p/q"`` string to a Fraction.

    Floats go through their shortest repr so that ``0.1`` becomes ``1/10``
    rather than the binary expansion.

    Parameters
    ----------
    value : int, float, Fraction or str
        Value to convert.

    Returns
    -------
    Fraction
        Exact rational value.

    Examples
    --------
    >>> to_fraction(0.1)
    Fraction(1, 10)
    >>> to_fraction("3/8")
    Fraction(3, 8)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError(f"Expected a number, got {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise ValueError(f"Cannot represent {value!r} exactly")
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"Cannot convert {value!r} to Fraction")


def as_values(values: Iterable[Any], exact: bool = False) -> np.ndarray:
    """
    Coerce a sequence of numbers to a float64 or Fraction object array.

    Parameters
    ----------
    values : iterable
        Numbers (int, float, Fraction or "p/q" strings).
    exact : bool, optional
        If True, return an object array of Fractions. Default is False.

    Returns
    -------
    np.ndarray
        The coerced array (a copy).
    """
    if exact:
        arr = np.asarray(values, dtype=object)
        flat = [to_fraction(v) for v in arr.ravel()]
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = flat if flat else []
        return out

    arr = np.asarray(values)
    if arr.dtype == object:
        return np.array([float(v) for v in arr.ravel()], dtype=float).reshape(arr.shape)
    return np.array(arr, dtype=float)


def is_exact_array(arr: np.ndarray) -> bool:
    """True if the array holds Fractions (object dtype)."""
    return arr.dtype == object


def coerce_scalar(value: Scalar, exact: bool) -> Scalar:
    """Match a scalar to the arithmetic of the array it is combined with."""
    if exact:
        return to_fraction(value)
    return float(value)


def zeros(shape: Any, exact: bool = False) -> np.ndarray:
    """Zero array in the requested arithmetic."""
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape, dtype=float)


def full(shape: Any, value: Scalar, exact: bool = False) -> np.ndarray:
    """Constant array in the requested arithmetic."""
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(to_fraction(value))
        return out
    return np.full(shape, float(value), dtype=float)


def max_abs(arr: np.ndarray) -> Scalar:
    """Largest absolute entry (0 for empty arrays)."""
    if arr.size == 0:
        return Fraction(0) if is_exact_array(arr) else 0.0
    return np.max(np.abs(arr))


def comparison_tolerance(arr: np.ndarray) -> float:
    """
    Absolute tolerance for zero/sign tests on ``arr``.

    Zero in exact mode; otherwise ``tolerance * (1 + max|arr|)``.
    """
    if is_exact_array(arr):
        return 0
    return get_settings().tolerance * (1.0 + float(max_abs(arr)))


def level_tolerance(arr: np.ndarray) -> float:
    """
    Merge tolerance for level sets of ``arr``.

    Two entries belong to the same level set iff they differ by at most
    ``level_tolerance * (1 + max|arr|)``; exact mode requires equality.
    """
    if is_exact_array(arr):
        return 0
    return get_settings().level_tolerance * (1.0 + float(max_abs(arr)))


def membership_tolerance(arr: np.ndarray) -> float:
    """Residual threshold for span membership of ``arr``."""
    if is_exact_array(arr):
        return 0
    return get_settings().membership_tolerance * (1.0 + float(max_abs(arr)))


def format_number(value: Any) -> str:
    """
    Deterministic text form of a number.

    Fractions print as ``p/q`` (or ``p`` when integral), floats through
    ``repr``.

    Examples
    --------
    >>> format_number(Fraction(3, 4))
    '3/4'
    >>> format_number(0.5)
    '0.5'
    """
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def parse_number(value: Any, exact: bool = False) -> Scalar:
    """Parse a JSON number or ``"p/q"`` string into the requested arithmetic."""
    if exact:
        return to_fraction(value)
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)

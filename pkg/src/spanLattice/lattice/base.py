"""State spaces and payoff vectors."""

from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

from ..config import get_settings
from ..errors import DimensionError, DomainError
from .arithmetic import (
    Scalar,
    as_values,
    coerce_scalar,
    comparison_tolerance,
    full,
    is_exact_array,
    max_abs,
    zeros,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateSpace:
    """
    Finite probability space: ``n`` states with strictly positive weights.

    Attributes
    ----------
    n : int
        Number of states.
    probs : tuple
        State probabilities (floats or Fractions), one per state.

    Examples
    --------
    >>> space = StateSpace.uniform(3)
    >>> space.n
    3
    """

    n: int
    probs: tuple

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"StateSpace needs n >= 1 states, got {self.n}")
        probs = tuple(self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != self.n:
            raise DimensionError(
                f"StateSpace has n={self.n} states but {len(probs)} probabilities"
            )
        if any(p <= 0 for p in probs):
            raise DomainError("State probabilities must be strictly positive")

        total = sum(probs)
        if all(isinstance(p, Fraction) for p in probs):
            if total != 1:
                raise DomainError(f"State probabilities sum to {total}, expected 1")
        elif abs(float(total) - 1.0) > get_settings().probability_tolerance:
            raise DomainError(f"State probabilities sum to {float(total)!r}, expected 1")

    @classmethod
    def uniform(cls, n: int, exact: bool = False) -> StateSpace:
        """Equally likely states."""
        if n < 1:
            raise DomainError(f"StateSpace needs n >= 1 states, got {n}")
        p = Fraction(1, n) if exact else 1.0 / n
        return cls(n=n, probs=(p,) * n)

    @classmethod
    def from_weights(cls, weights: Sequence[Any], exact: bool = False) -> StateSpace:
        """Normalise positive weights into probabilities."""
        w = as_values(weights, exact=exact)
        if w.size == 0:
            raise DomainError("StateSpace needs at least one state")
        if np.any(w <= 0):
            raise DomainError("State weights must be strictly positive")
        total = np.sum(w)
        return cls(n=len(w), probs=tuple(v / total for v in w))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.probs)

    def prob_array(self, exact: Optional[bool] = None) -> np.ndarray:
        """Probabilities as an array in the requested arithmetic."""
        if exact is None:
            exact = self.is_exact
        return as_values(self.probs, exact=exact)

    def same_as(self, other: StateSpace) -> bool:
        """State spaces agree in size and (numerically) in probabilities."""
        if self is other:
            return True
        if self.n != other.n:
            return False
        return all(
            abs(float(p) - float(q)) <= get_settings().probability_tolerance
            for p, q in zip(self.probs, other.probs)
        )

    def __repr__(self) -> str:
        kind = "exact" if self.is_exact else "float"
        return f"StateSpace(n={self.n}, {kind})"


class Payoff:
    """
    Random variable on a finite state space: the lattice element.

    Values are stored in an immutable float64 array, or an object array
    of Fractions in exact mode. All lattice operations are pointwise.

    Parameters
    ----------
    space : StateSpace
        Underlying state space.
    values : sequence of numbers
        One value per state.
    exact : bool, optional
        Force exact (True) or float (False) arithmetic. If None, values
        given as an object array or as Fractions stay exact.

    Examples
    --------
    >>> space = StateSpace.uniform(2)
    >>> x = Payoff(space, [1, 3])
    >>> y = Payoff(space, [2, 0])
    >>> (x & y).tolist()
    [1.0, 0.0]
    """

    __slots__ = ("space", "values")
    __array_ufunc__ = None

    def __init__(self, space: StateSpace, values: Iterable[Any], exact: Optional[bool] = None):
        if exact is None:
            arr = np.asarray(values)
            exact = arr.dtype == object and all(
                isinstance(v, (Fraction, int)) for v in arr.ravel()
            )
        arr = as_values(values, exact=exact)
        if arr.ndim != 1 or arr.shape[0] != space.n:
            raise DimensionError(
                f"Payoff needs {space.n} values for {space!r}, got shape {arr.shape}"
            )
        arr.flags.writeable = False
        self.space = space
        self.values = arr

    # Constructors

    @classmethod
    def constant(cls, space: StateSpace, value: Scalar, exact: bool = False) -> Payoff:
        return cls(space, full(space.n, value, exact=exact), exact=exact)

    @classmethod
    def one(cls, space: StateSpace, exact: bool = False) -> Payoff:
        """The constant-one payoff."""
        return cls.constant(space, 1, exact=exact)

    @classmethod
    def zero(cls, space: StateSpace, exact: bool = False) -> Payoff:
        return cls(space, zeros(space.n, exact=exact), exact=exact)

    @classmethod
    def indicator(cls, space: StateSpace, states: Iterable[int], exact: bool = False) -> Payoff:
        """Indicator of a set of state indices."""
        vals = zeros(space.n, exact=exact)
        one = Fraction(1) if exact else 1.0
        for i in states:
            if not 0 <= i < space.n:
                raise DimensionError(f"State index {i} outside 0..{space.n - 1}")
            vals[i] = one
        return cls(space, vals, exact=exact)

    def _wrap(self, values: np.ndarray) -> Payoff:
        return Payoff(self.space, values, exact=self.is_exact)

    def _check(self, other: Payoff) -> None:
        if not isinstance(other, Payoff):
            raise TypeError(f"Expected a Payoff, got {type(other).__name__}")
        if not self.space.same_as(other.space):
            raise DimensionError(
                f"Payoffs live on different state spaces: {self.space!r} vs {other.space!r}"
            )

    def _pair(self, other: Payoff) -> tuple[np.ndarray, np.ndarray]:
        """Aligned value arrays, promoting to float if only one side is exact."""
        self._check(other)
        if self.is_exact == other.is_exact:
            return self.values, other.values
        return as_values(self.values), as_values(other.values)

    # Properties

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def is_exact(self) -> bool:
        return is_exact_array(self.values)

    def to_exact(self) -> Payoff:
        return Payoff(self.space, self.values, exact=True)

    def to_float(self) -> Payoff:
        return Payoff(self.space, self.values, exact=False)

    def tolist(self) -> list:
        return self.values.tolist()

    def __len__(self) -> int:
        return self.space.n

    def __getitem__(self, i: int) -> Scalar:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    # Linear structure

    def __add__(self, other: Payoff) -> Payoff:
        a, b = self._pair(other)
        return Payoff(self.space, a + b, exact=is_exact_array(a))

    def __sub__(self, other: Payoff) -> Payoff:
        a, b = self._pair(other)
        return Payoff(self.space, a - b, exact=is_exact_array(a))

    def __neg__(self) -> Payoff:
        return self._wrap(-self.values)

    def __mul__(self, scalar: Scalar) -> Payoff:
        if isinstance(scalar, Payoff):
            return NotImplemented
        return self._wrap(self.values * coerce_scalar(scalar, self.is_exact))

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> Payoff:
        if isinstance(scalar, Payoff):
            return NotImplemented
        return self._wrap(self.values / coerce_scalar(scalar, self.is_exact))

    # Lattice structure

    def meet(self, other: Payoff) -> Payoff:
        a, b = self._pair(other)
        return Payoff(self.space, np.minimum(a, b), exact=is_exact_array(a))

    def join(self, other: Payoff) -> Payoff:
        a, b = self._pair(other)
        return Payoff(self.space, np.maximum(a, b), exact=is_exact_array(a))

    __and__ = meet
    __or__ = join

    def pos_part(self) -> Payoff:
        return self._wrap(np.maximum(self.values, coerce_scalar(0, self.is_exact)))

    def neg_part(self) -> Payoff:
        return self._wrap(np.maximum(-self.values, coerce_scalar(0, self.is_exact)))

    def abs(self) -> Payoff:
        return self._wrap(np.abs(self.values))

    __abs__ = abs

    # Queries

    def sup_norm(self) -> Scalar:
        return max_abs(self.values)

    def max(self) -> Scalar:
        return np.max(self.values)

    def min(self) -> Scalar:
        return np.min(self.values)

    def is_nonnegative(self, tol: Optional[float] = None) -> bool:
        if tol is None:
            tol = comparison_tolerance(self.values)
        return bool(np.all(self.values >= -tol))

    def is_weak_unit(self, tol: Optional[float] = None) -> bool:
        """Strictly positive in every state."""
        if tol is None:
            tol = comparison_tolerance(self.values)
        return bool(np.all(self.values > tol))

    def support(self, tol: Optional[float] = None) -> tuple[int, ...]:
        """States where the payoff is nonzero."""
        if tol is None:
            tol = comparison_tolerance(self.values)
        return tuple(int(i) for i in np.flatnonzero(np.abs(self.values) > tol))

    def dominated_by(self, other: Payoff, tol: Optional[float] = None) -> bool:
        """``self <= other`` pointwise."""
        a, b = self._pair(other)
        if tol is None:
            tol = max(comparison_tolerance(a), comparison_tolerance(b))
        return bool(np.all(a <= b + tol))

    def allclose(self, other: Payoff, tol: Optional[float] = None) -> bool:
        """Pointwise equality, exact when both sides are exact."""
        a, b = self._pair(other)
        if tol is None:
            tol = max(comparison_tolerance(a), comparison_tolerance(b))
        return bool(np.all(np.abs(a - b) <= tol))

    def restrict(self, states: Iterable[int]) -> Payoff:
        """Payoff multiplied by the indicator of ``states``."""
        mask = np.zeros(self.n, dtype=bool)
        mask[list(states)] = True
        vals = np.where(mask, self.values, coerce_scalar(0, self.is_exact))
        return self._wrap(vals)

    def ratio(self, unit: Payoff) -> Payoff:
        """Pointwise ``self / unit`` on the support of ``unit``, 0 elsewhere."""
        a, b = self._pair(unit)
        exact = is_exact_array(a)
        out = zeros(self.n, exact=exact)
        supp = np.abs(b) > comparison_tolerance(b)
        out[supp] = a[supp] / b[supp]
        return Payoff(self.space, out, exact=exact)

    def expectation(self) -> Scalar:
        """Expected value under the state probabilities."""
        probs = self.space.prob_array(exact=self.is_exact)
        return np.sum(self.values * probs)

    def __repr__(self) -> str:
        vals = ", ".join(str(v) if isinstance(v, Fraction) else f"{v:g}" for v in self.values)
        return f"Payoff([{vals}])"


def as_payoff(space: StateSpace, values: Union[Payoff, Iterable[Any]], exact: bool = False) -> Payoff:
    """Wrap raw values into a Payoff unless they already are one."""
    if isinstance(values, Payoff):
        return values
    return Payoff(space, values, exact=exact)


def same_space(payoffs: Sequence[Payoff]) -> StateSpace:
    """Common state space of a non-empty list of payoffs."""
    space = payoffs[0].space
    for p in payoffs[1:]:
        if not space.same_as(p.space):
            raise DimensionError(
                f"Payoffs live on different state spaces: {space!r} vs {p.space!r}"
            )
    return space

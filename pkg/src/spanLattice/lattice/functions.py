"""Pointwise lattice operations, options, components and band projections."""

from __future__ import annotations
import logging
from typing import Optional

import numpy as np

from ..errors import ArgumentError, DomainError
from .arithmetic import Scalar, coerce_scalar, comparison_tolerance
from .base import Payoff

logger = logging.getLogger(__name__)

LATTICE_OPS = ("meet", "join", "pos_part", "abs", "plus", "scale")
OPTION_KINDS = ("call", "put")


def lattice_ops(
    x: Payoff,
    y: Optional[Payoff] = None,
    op: str = "meet",
    scale: Optional[Scalar] = None,
) -> Payoff:
    """
    Apply one lattice or linear operation pointwise.

    Parameters
    ----------
    x : Payoff
        First operand.
    y : Payoff, optional
        Second operand, required for ``meet``, ``join`` and ``plus``.
    op : str, optional
        One of ``meet``, ``join``, ``pos_part``, ``abs``, ``plus``, ``scale``.
    scale : scalar, optional
        Multiplier for ``scale``.

    Returns
    -------
    Payoff
        Result of the operation.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(2)
    >>> lattice_ops(Payoff(space, [1, 3]), Payoff(space, [2, 0]), op="meet").tolist()
    [1.0, 0.0]
    >>> lattice_ops(Payoff(space, [-2, 5]), op="abs").tolist()
    [2.0, 5.0]
    """
    if op not in LATTICE_OPS:
        raise ArgumentError(f"Unknown lattice op {op!r}; expected one of {LATTICE_OPS}")

    if op in ("meet", "join", "plus"):
        if y is None:
            raise ArgumentError(f"Operation {op!r} needs a second payoff")
        if op == "meet":
            return x.meet(y)
        if op == "join":
            return x.join(y)
        return x + y

    if op == "pos_part":
        return x.pos_part()
    if op == "abs":
        return x.join(-x)

    if scale is None:
        raise ArgumentError("Operation 'scale' needs a scale factor")
    return x * scale


def option_payoff(f: Payoff, k: Scalar, kind: str) -> Payoff:
    """
    Payoff of a call ``(f - k)^+`` or a put ``(k - f)^+``.

    Parameters
    ----------
    f : Payoff
        Underlying asset.
    k : scalar
        Strike.
    kind : {'call', 'put'}
        Option type.

    Returns
    -------
    Payoff
        Option payoff.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> f = Payoff(StateSpace.uniform(3), [0, 1, 2])
    >>> option_payoff(f, 1, "call").tolist()
    [0.0, 0.0, 1.0]
    >>> option_payoff(f, 1, "put").tolist()
    [1.0, 0.0, 0.0]
    """
    if kind not in OPTION_KINDS:
        raise ArgumentError(f"Option kind must be 'call' or 'put', got {kind!r}")
    strike = coerce_scalar(k, f.is_exact)
    shifted = f.values - strike
    if kind == "put":
        shifted = -shifted
    return Payoff(f.space, np.maximum(shifted, coerce_scalar(0, f.is_exact)), exact=f.is_exact)


def is_component(x: Payoff, u: Payoff, tol: Optional[float] = None) -> bool:
    """
    Check whether ``x`` is a component of ``u``: ``(u - x) ∧ x = 0``.

    Parameters
    ----------
    x : Payoff
        Candidate component.
    u : Payoff
        Nonnegative payoff.
    tol : float, optional
        Absolute tolerance. Defaults to the global tolerance scaled by ``u``.

    Returns
    -------
    bool
        True iff every ``x_i`` is ``0`` or ``u_i``.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> is_component(Payoff(space, [1, 0, 1]), Payoff.one(space))
    True
    """
    if not u.is_nonnegative():
        raise DomainError("is_component requires u >= 0")
    if tol is None:
        tol = max(comparison_tolerance(u.values), comparison_tolerance(x.values))
    residual = (u - x).meet(x)
    return bool(np.all(np.abs(residual.values) <= tol))


def band_projection_unit(x: Payoff, u: Payoff) -> Payoff:
    """
    Band projection of ``u`` onto the band generated by ``x``.

    At finite scale this is ``u`` restricted to the support of ``x``.

    Parameters
    ----------
    x : Payoff
        Nonnegative payoff generating the band.
    u : Payoff
        Nonnegative payoff to project.

    Returns
    -------
    Payoff
        ``u_i`` where ``x_i > 0`` and ``0`` elsewhere.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(2)
    >>> band_projection_unit(Payoff(space, [0, 3]), Payoff.one(space)).tolist()
    [0.0, 1.0]
    """
    if not x.is_nonnegative():
        raise DomainError("band_projection_unit requires x >= 0")
    if not u.is_nonnegative():
        raise DomainError("band_projection_unit requires u >= 0")
    return u.restrict(x.support())


def band_projection_sup(x: Payoff, u: Payoff, iterations: int = 64) -> Payoff:
    """
    Band projection by the formula ``sup_n (n x) ∧ u``, truncated at ``iterations``.

    Kept as a cross-check for :func:`band_projection_unit`.
    """
    if iterations < 1:
        raise ArgumentError(f"iterations must be >= 1, got {iterations}")
    if not x.is_nonnegative() or not u.is_nonnegative():
        raise DomainError("band_projection_sup requires x >= 0 and u >= 0")

    result = x.meet(u)
    previous = None
    for step in range(2, iterations + 1):
        result = result.join((x * step).meet(u))
        if previous is not None and result.allclose(previous):
            logger.debug("band_projection_sup stabilised after %d steps", step)
            break
        previous = result
    return result


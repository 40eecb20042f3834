"""Option spaces, butterfly replication and two-asset sublattices."""

from __future__ import annotations
import logging
from typing import NamedTuple, Sequence

import numpy as np

from ..errors import ArgumentError, DomainError, LimitedLiabilityError, SpanningError
from ..lattice import Payoff, option_payoff, same_space
from ..lattice.arithmetic import (
    as_values,
    coerce_scalar,
    comparison_tolerance,
    level_tolerance,
    membership_tolerance,
)
from ..lattice.linalg import combine, independent_indices, solve_in_span
from ..sigma import distinct_values, level_groups, non_measurable_block, sigma_of
from .instruments import Instrument, Portfolio

logger = logging.getLogger(__name__)


class OptionSpace(NamedTuple):
    """Independent call/put payoffs spanning the option space of an asset."""

    basis: list
    strikes: list
    kinds: list

    @property
    def dimension(self) -> int:
        return len(self.basis)


class Membership(NamedTuple):
    """Span membership verdict with ``(strike, kind, weight)`` coefficients."""

    member: bool
    coefficients: list


def _require_limited_liability(f: Payoff) -> None:
    if not f.is_nonnegative():
        raise LimitedLiabilityError(
            f"Asset must have limited liability (f >= 0), min value is {f.min()}"
        )


def strike_grid(values: Sequence, outer: bool = True) -> list:
    """
    Strikes that generate every option payoff on an asset with these values.

    Option payoffs are piecewise linear in the strike with kinks at the
    asset values, so the values, the midpoints between neighbours and one
    point beyond each end span all strikes.

    Parameters
    ----------
    values : sequence
        Distinct values, increasing.
    outer : bool, optional
        Include ``min - 1`` and ``max + 1``. Default is True.

    Returns
    -------
    list
        Increasing strikes.

    Examples
    --------
    >>> strike_grid([0.0, 1.0, 2.0])
    [-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0]
    """
    values = list(values)
    if not values:
        return []
    grid = []
    for lo, hi in zip(values, values[1:]):
        grid.extend([lo, (lo + hi) / 2])
    grid.append(values[-1])
    if outer:
        grid = [values[0] - 1] + grid + [values[-1] + 1]
    return [float(v) if isinstance(v, np.floating) else v for v in grid]


def option_space_basis(f: Payoff) -> OptionSpace:
    """
    Linearly independent calls and puts spanning the option space of ``f``.

    Parameters
    ----------
    f : Payoff
        Nonnegative asset.

    Returns
    -------
    OptionSpace
        Basis payoffs with their strikes and kinds. The dimension equals the
        number of distinct values of ``f``.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> f = Payoff(StateSpace.uniform(4), [0, 1, 1, 4])
    >>> option_space_basis(f).dimension
    3
    """
    _require_limited_liability(f)
    candidates = []
    labels = []
    for k in strike_grid(distinct_values(f)):
        for kind in ("call", "put"):
            candidates.append(option_payoff(f, k, kind))
            labels.append((k, kind))

    kept = independent_indices(candidates)
    logger.debug(
        "option_space_basis: %d candidates, dimension %d", len(candidates), len(kept)
    )
    return OptionSpace(
        basis=[candidates[i] for i in kept],
        strikes=[labels[i][0] for i in kept],
        kinds=[labels[i][1] for i in kept],
    )


def butterfly(f: Payoff, target_value) -> Portfolio:
    """
    Options whose payoff is the indicator of ``{f = target_value}``.

    Interior values use a call butterfly with wings at ``v ± ε``; the lowest
    value uses a put ramp and the highest a call ramp. ``ε`` is half the
    smaller gap from the target to its neighbouring distinct values.

    Parameters
    ----------
    f : Payoff
        Nonnegative asset.
    target_value : scalar
        A value attained by ``f``.

    Returns
    -------
    Portfolio
        At most three options.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> f = Payoff(StateSpace.uniform(3), [0, 1, 2])
    >>> butterfly(f, 1).evaluate().tolist()
    [0.0, 1.0, 0.0]
    """
    _require_limited_liability(f)
    exact = f.is_exact
    values = distinct_values(f)
    target = coerce_scalar(target_value, exact)
    tol = level_tolerance(f.values)

    matches = [i for i, v in enumerate(values) if abs(v - target) <= tol]
    if not matches:
        raise ArgumentError(f"Target value {target_value} is not attained by the asset")
    idx = matches[0]
    v = values[idx]
    one = coerce_scalar(1, exact)

    neighbours = values[max(idx - 1, 0):idx] + values[idx + 1:idx + 2]
    if neighbours:
        eps = min(abs(w - v) for w in neighbours) / 2
    else:
        eps = one

    def leg(kind, strike, weight):
        return (Instrument(kind, strike, f), weight)

    if len(values) == 1 or idx == 0:
        positions = [leg("put", v + eps, one / eps)]
    elif idx == len(values) - 1:
        positions = [leg("call", v - eps, one / eps)]
    else:
        positions = [
            leg("call", v - eps, one / eps),
            leg("call", v, -2 * one / eps),
            leg("call", v + eps, one / eps),
        ]
    return Portfolio(positions, underlying=f)


def replicate(g: Payoff, f: Payoff) -> Portfolio:
    """
    Replicate a claim by options on ``f``.

    Parameters
    ----------
    g : Payoff
        Claim, constant on the level sets of ``f``.
    f : Payoff
        Nonnegative asset.

    Returns
    -------
    Portfolio
        ``sum_v g(v) * butterfly(f, v)``, merged by strike and kind.

    Raises
    ------
    SpanningError
        If ``g`` is not a function of ``f``. Carries the least-squares
        residual, the best approximation and a violating level set.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> f = Payoff(StateSpace.uniform(3), [0, 1, 2])
    >>> replicate(Payoff.one(f.space), f).evaluate().tolist()
    [1.0, 1.0, 1.0]
    """
    _require_limited_liability(f)
    same_space([g, f])

    block = non_measurable_block(g, sigma_of([f]))
    if block is not None:
        approximation, residual = best_approximation(g, f)
        raise SpanningError(
            f"Claim is not constant on the level set {list(block)} of the asset",
            residual=residual,
            block=block,
            approximation=approximation,
        )

    exact = f.is_exact and g.is_exact
    labels, values = level_groups(f.values)
    portfolio = Portfolio([], underlying=f)
    for idx, v in enumerate(values):
        state = int(np.flatnonzero(labels == idx)[0])
        weight = coerce_scalar(g.values[state], exact)
        portfolio = portfolio + butterfly(f, v).scaled(weight)
    portfolio = portfolio.merged()

    residual = (portfolio.evaluate() - g).sup_norm()
    if residual > membership_tolerance(g.values):
        logger.warning("replicate: residual %s above tolerance", residual)
    logger.debug("replicate: %d positions, residual %s", len(portfolio), residual)
    return portfolio


def best_approximation(g: Payoff, f: Payoff) -> tuple[Payoff, float]:
    """
    Least-squares projection of ``g`` onto the option space of ``f``.

    Returns
    -------
    approximation : Payoff
        Closest element of the option space.
    residual : float
        Max-norm distance to ``g``.
    """
    basis = option_space_basis(f).basis
    solution = solve_in_span(basis, g)
    if solution.member and f.is_exact and g.is_exact:
        approximation = combine(basis, solution.coefficients)
    else:
        approximation = combine([b.to_float() for b in basis], solution.coefficients)
    residual = float((approximation.to_float() - g.to_float()).sup_norm())
    return approximation, residual


def _two_asset_generators(x: Payoff, y: Payoff) -> tuple[list, list]:
    supp = list(y.support())
    exact = x.is_exact and y.is_exact
    if supp:
        xs = as_values(x.values, exact)[supp]
        ys = as_values(y.values, exact)[supp]
        ratios = level_groups(xs / ys)[1]
    else:
        ratios = [coerce_scalar(0, exact)]
    gens, labels = [], []
    for k in strike_grid(ratios):
        k = coerce_scalar(k, exact)
        gens.append((x - y * k).pos_part())
        labels.append((k, "call"))
        gens.append((y * k - x).pos_part())
        labels.append((k, "put"))
    return gens, labels


def sublattice_membership(z: Payoff, x: Payoff, y: Payoff) -> Membership:
    """
    Decide whether ``z`` lies in the sublattice generated by ``x`` and ``y``.

    The sublattice is the span of ``(x - ky)^+`` and ``(ky - x)^+`` over all
    real ``k``; ``k`` runs over :func:`strike_grid` of the ratios ``x/y``.
    Off the support of ``y`` every generator is ``x`` or ``0``, so members
    must be a multiple of ``x`` there.

    Parameters
    ----------
    z, x, y : Payoff
        Candidate and nonnegative generators.

    Returns
    -------
    Membership
        Verdict and nonzero ``(strike, kind, weight)`` coefficients.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(2)
    >>> x, y = Payoff(space, [1, 0]), Payoff(space, [0, 1])
    >>> sublattice_membership(Payoff(space, [0, 3]), x, y).member
    True
    """
    if not x.is_nonnegative() or not y.is_nonnegative():
        raise DomainError("sublattice_membership requires x >= 0 and y >= 0")
    same_space([z, x, y])

    supp = set(y.support())
    off = [i for i in range(z.n) if i not in supp]
    if off:
        x_off = as_values(x.values)[off]
        z_off = as_values(z.values)[off]
        tol = membership_tolerance(z_off) + comparison_tolerance(x_off)
        if np.max(np.abs(x_off)) <= comparison_tolerance(x_off):
            if np.max(np.abs(z_off)) > tol:
                return Membership(False, [])
        else:
            c = float(z_off @ x_off) / float(x_off @ x_off)
            if np.max(np.abs(z_off - c * x_off)) > tol:
                return Membership(False, [])

    gens, labels = _two_asset_generators(x, y)
    solution = solve_in_span(gens, z)
    if not solution.member:
        return Membership(False, [])

    coeff_tol = comparison_tolerance(as_values(solution.coefficients)) if len(gens) else 0
    coefficients = [
        (k, kind, w)
        for (k, kind), w in zip(labels, solution.coefficients)
        if abs(w) > coeff_tol
    ]
    return Membership(True, coefficients)

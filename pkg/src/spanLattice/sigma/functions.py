"""Generation of finite sigma-algebras and measurability tests."""

from __future__ import annotations
import logging
from typing import Any, NamedTuple, Optional, Sequence

import numpy as np

from ..errors import ArgumentError, DimensionError, DomainError, NotASublatticeError
from ..lattice import Payoff, band_projection_unit, is_component, same_space
from ..lattice.arithmetic import as_values, coerce_scalar, level_tolerance
from .partition import Partition

logger = logging.getLogger(__name__)


def level_groups(values: Any) -> tuple[np.ndarray, list]:
    """
    Group entries into level sets.

    Sorted neighbours within the level tolerance are chained into one group.
    Groups are numbered in increasing order of value.

    Parameters
    ----------
    values : array-like
        Float or Fraction values.

    Returns
    -------
    labels : np.ndarray
        Group index of every entry.
    representatives : list
        Smallest value of each group, increasing.
    """
    arr = np.asarray(values)
    if arr.dtype != object:
        arr = as_values(arr)
    n = arr.shape[0]
    labels = np.zeros(n, dtype=int)
    if n == 0:
        return labels, []

    tol = level_tolerance(arr)
    order = np.argsort(arr, kind="stable")
    reps = [arr[order[0]]]
    prev = arr[order[0]]
    current = 0
    for idx in order[1:]:
        v = arr[idx]
        if v - prev > tol:
            current += 1
            reps.append(v)
        labels[idx] = current
        prev = v
    return labels, reps


def level_set_labels(f: Payoff) -> np.ndarray:
    """Level-set index of each state (0 for the smallest value)."""
    return level_groups(f.values)[0]


def distinct_values(f: Payoff) -> list:
    """Distinct values of ``f`` (up to the level tolerance), increasing."""
    return level_groups(f.values)[1]


def sigma_of(assets: Sequence[Payoff]) -> Partition:
    """
    Partition generated by a list of payoffs.

    States share a block iff every asset takes the same value on them.

    Parameters
    ----------
    assets : sequence of Payoff
        Generating payoffs, on one state space.

    Returns
    -------
    Partition
        Coarsest partition on whose blocks every asset is constant.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> sigma_of([Payoff(space, [0, 1, 1]), Payoff(space, [5, 5, 7])]).blocks
    ((0,), (1,), (2,))
    """
    if not assets:
        raise ArgumentError("sigma_of needs at least one payoff")
    space = same_space(list(assets))
    per_asset = [level_set_labels(a).tolist() for a in assets]
    labels = list(zip(*per_asset))
    part = Partition.from_labels(space, labels)
    logger.debug("sigma_of: %d assets -> %d blocks", len(assets), part.n_blocks)
    return part


def non_measurable_block(g: Payoff, part: Partition) -> Optional[tuple[int, ...]]:
    """First block on which ``g`` is not constant, or None."""
    if not g.space.same_as(part.space):
        raise DimensionError("Claim and partition live on different state spaces")
    tol = level_tolerance(g.values)
    for block in part.blocks:
        vals = g.values[list(block)]
        if np.max(vals) - np.min(vals) > tol:
            return block
    return None


def is_measurable(g: Payoff, part: Partition) -> bool:
    """
    True iff ``g`` is constant on every block of ``part``.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> part = Partition(space, [[0, 1], [2]])
    >>> is_measurable(Payoff(space, [3, 3, 8]), part)
    True
    >>> is_measurable(Payoff(space, [3, 4, 8]), part)
    False
    """
    return non_measurable_block(g, part) is None


def lambda_grid(ratios: Any) -> list:
    """
    Levels at which ``(λu - x)^+`` can change support.

    The support of ``(λu - x)^+`` is ``{x/u < λ}``, which only changes when
    λ crosses a ratio. The distinct ratios plus the midpoints between
    consecutive ones therefore hit every support that any real λ produces
    (below the smallest ratio the support is empty).

    Parameters
    ----------
    ratios : array-like or Payoff
        The values ``x_i / u_i``.

    Returns
    -------
    list
        Distinct ratios and midpoints, increasing.

    Examples
    --------
    >>> lambda_grid([3.0, 3.0, 8.0])
    [3.0, 5.5, 8.0]
    """
    if isinstance(ratios, Payoff):
        ratios = ratios.values
    reps = level_groups(ratios)[1]
    grid = []
    for lo, hi in zip(reps, reps[1:]):
        grid.extend([lo, (lo + hi) / 2])
    if reps:
        grid.append(reps[-1])
    return [float(v) if isinstance(v, np.floating) else v for v in grid]


def _is_union_of_blocks(states: Sequence[int], part: Partition) -> bool:
    chosen = set(states)
    return all(
        all(i in chosen for i in b) or not any(i in chosen for i in b)
        for b in part.blocks
    )


def measurable_via_components(x: Payoff, part: Partition, u: Payoff) -> bool:
    """
    Measurability through band projections of a weak unit.

    ``x`` is measurable iff for every λ the projection of ``u`` onto the band
    of ``(λu - x)^+`` is a component of ``u`` of the form ``u·1_F`` with
    ``F`` a union of blocks. λ runs over :func:`lambda_grid` of ``x/u``.

    Parameters
    ----------
    x : Payoff
        Claim to test.
    part : Partition
        Sigma-algebra.
    u : Payoff
        Weak unit (strictly positive).

    Returns
    -------
    bool
        Verdict; agrees with :func:`is_measurable` for ``u = 1``.
    """
    if not u.is_weak_unit():
        raise DomainError("measurable_via_components requires a weak unit u > 0")
    if not (x.space.same_as(part.space) and u.space.same_as(part.space)):
        raise DimensionError("Claim, unit and partition live on different state spaces")

    for lam in lambda_grid(x.ratio(u)):
        w = (u * coerce_scalar(lam, u.is_exact) - x).pos_part()
        projection = band_projection_unit(w, u)
        if not is_component(projection, u):
            return False
        if not _is_union_of_blocks(w.support(), part):
            logger.debug("measurable_via_components: level %s splits a block", lam)
            return False
    return True


def measurable_subspace_basis(part: Partition, exact: bool = False) -> list[Payoff]:
    """
    Block indicators; their span is the space of measurable payoffs.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> [p.tolist() for p in measurable_subspace_basis(Partition(space, [[0, 2], [1]]))]
    [[1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]
    """
    return part.indicators(exact=exact)


class SublatticeRepresentation(NamedTuple):
    """
    A sublattice written as ``{u·h : h measurable w.r.t. partition}``.

    States outside the support of ``unit`` form one dedicated null block.
    """

    unit: Payoff
    partition: Partition

    def support(self) -> tuple[int, ...]:
        return self.unit.support()

    def null_block(self) -> Optional[tuple[int, ...]]:
        supp = set(self.support())
        rest = tuple(i for i in range(self.unit.n) if i not in supp)
        return rest or None

    def basis(self) -> list[Payoff]:
        """Vectors ``u·1_B`` for the blocks inside the support of ``u``."""
        null = self.null_block()
        return [self.unit.restrict(b) for b in self.partition.blocks if b != null]

    def factor(self, g: Payoff) -> Payoff:
        """The ratio ``h = g/u`` on the support of ``u`` (0 elsewhere)."""
        return g.ratio(self.unit)

    def reconstruct(self, h: Payoff) -> Payoff:
        """The product ``u·h``."""
        exact = self.unit.is_exact and h.is_exact
        return Payoff(
            self.unit.space,
            as_values(self.unit.values, exact) * as_values(h.values, exact),
            exact=exact,
        )

    def contains(self, g: Payoff) -> bool:
        """``g = u·h`` with ``h`` constant on blocks."""
        null = self.null_block()
        if null is not None and not g.restrict(null).allclose(Payoff.zero(g.space)):
            return False
        h = self.factor(g)
        return is_measurable(h, self.partition) and self.reconstruct(h).allclose(g)


def closed_sublattice_representation(basis: Sequence[Payoff]) -> SublatticeRepresentation:
    """
    Write a sublattice as a weak unit times the measurable functions of a partition.

    Parameters
    ----------
    basis : sequence of Payoff
        Spanning set of a sublattice.

    Returns
    -------
    SublatticeRepresentation
        ``unit = Σ|g| / max Σ|g|`` and the partition generated by the
        ratios ``g/unit`` on the support of the unit.

    Raises
    ------
    NotASublatticeError
        If the span of ``basis`` is not closed under lattice operations.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> rep = closed_sublattice_representation([Payoff(space, [1, 1, 0])])
    >>> rep.partition.blocks
    ((0, 1), (2,))
    """
    from ..options.oracle import is_sublattice

    if not basis:
        raise ArgumentError("closed_sublattice_representation needs a non-empty basis")
    space = same_space(list(basis))
    if not is_sublattice(basis):
        raise NotASublatticeError("Span of the basis is not closed under meets and joins")

    exact = all(g.is_exact for g in basis)
    total = as_values(basis[0].values, exact) * 0
    for g in basis:
        total = total + np.abs(as_values(g.values, exact))
    top = np.max(total)
    unit = Payoff(space, total / top if top != 0 else total, exact=exact)

    supp = list(unit.support())
    labels: list[Any] = ["null"] * space.n
    if supp:
        per_basis = [level_groups(g.ratio(unit).values[supp])[0].tolist() for g in basis]
        for pos, state in enumerate(supp):
            labels[state] = tuple(col[pos] for col in per_basis)
    part = Partition.from_labels(space, labels)
    logger.debug("closed_sublattice_representation: %d blocks", part.n_blocks)
    return SublatticeRepresentation(unit=unit, partition=part)


"""Brute-force generation of the sublattice spanned by a set of payoffs."""

from __future__ import annotations
import logging
from itertools import combinations
from typing import Optional, Sequence

from ..errors import ArgumentError, NonConvergenceError
from ..lattice import Payoff, same_space
from ..lattice.linalg import independent_indices, rank, reduced_basis

logger = logging.getLogger(__name__)


def lattice_closure_oracle(generators: Sequence[Payoff], cap: Optional[int] = None) -> list[Payoff]:
    """
    Basis of the smallest sublattice containing ``generators``.

    Each round rewrites the current span in reduced form (identity on a set
    of pivot states) and adds the positive parts of ``±r`` and the pairwise
    meets of the reduced vectors ``r``. The span is a sublattice exactly
    when these add nothing, i.e. when the reduced vectors are nonnegative
    with disjoint supports. The dimension grows every round until then, so
    at most ``n`` rounds are needed.

    Parameters
    ----------
    generators : sequence of Payoff
        Generating payoffs on one state space.
    cap : int, optional
        Maximum number of rounds. Defaults to the number of states.

    Returns
    -------
    list of Payoff
        Nonnegative, disjointly supported basis of the generated sublattice.

    Raises
    ------
    NonConvergenceError
        If the span has not stabilised after ``cap`` rounds.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> len(lattice_closure_oracle([Payoff(space, [3, 2, 1]), Payoff.one(space)]))
    3
    """
    if not generators:
        raise ArgumentError("lattice_closure_oracle needs at least one generator")
    space = same_space(list(generators))
    if cap is None:
        cap = space.n
    if cap < 1:
        raise ArgumentError(f"cap must be >= 1, got {cap}")

    current = [generators[i] for i in independent_indices(list(generators))]
    dim = len(current)
    for round_ in range(1, cap + 1):
        reduced = reduced_basis(current)
        if not reduced:
            return []
        candidates = list(reduced)
        for r in reduced:
            candidates.append(r.pos_part())
            candidates.append((-r).pos_part())
        for a, b in combinations(reduced, 2):
            candidates.append(a.meet(b))

        current = [candidates[i] for i in independent_indices(candidates)]
        new_dim = len(current)
        logger.debug("lattice_closure_oracle round %d: dimension %d -> %d", round_, dim, new_dim)
        if new_dim == dim:
            return reduced
        dim = new_dim

    if cap >= space.n:
        logger.error("lattice_closure_oracle did not stabilise within %d >= n rounds", cap)
    raise NonConvergenceError(
        f"Sublattice closure did not stabilise within {cap} rounds (dimension {dim})"
    )


def is_sublattice(basis: Sequence[Payoff]) -> bool:
    """True iff ``span(basis)`` is closed under meets and joins."""
    if not basis:
        return True
    return rank(lattice_closure_oracle(basis)) == rank(list(basis))


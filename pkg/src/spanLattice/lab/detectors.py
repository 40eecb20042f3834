"""uo-/o-convergence detectors and the weighted order-null detector."""

from __future__ import annotations
import logging
from typing import Any, Optional, Sequence, Union

import numpy as np

from ..config import get_settings
from ..errors import ArgumentError, DimensionError, DomainError
from ..lattice import Payoff
from ..lattice.arithmetic import as_values
from .double_array import DoubleArray
from .results import ConvergenceWitness, SummabilityReport

logger = logging.getLogger(__name__)

Element = Union[Payoff, DoubleArray]


def _coordinates(element: Element) -> np.ndarray:
    """Float coordinates checked for convergence (limit columns excluded)."""
    if isinstance(element, DoubleArray):
        return as_values(element.entries)
    if isinstance(element, Payoff):
        return as_values(element.values)
    raise TypeError(f"Expected a Payoff or DoubleArray, got {type(element).__name__}")


def _dominator(seq: Sequence[Element]) -> Element:
    """Entrywise sup of ``|x_k|`` over the sequence."""
    top = seq[0].abs()
    for x in seq[1:]:
        top = top.join(x.abs())
    return top


def convergence_detect(
    seq: Sequence[Element],
    limit: Element,
    mode: str = "uo",
    cap: Optional[float] = None,
    tolerance: Optional[float] = None,
    window: int = 1,
) -> ConvergenceWitness:
    """
    Detect uo- or o-convergence of a finite prefix.

    uo-mode checks coordinatewise convergence: every coordinate of the last
    ``window`` elements lies within ``tolerance`` of the limit. The witness
    also reports, per coordinate, the index from which the prefix stays
    within ``tolerance``; a late settle index means the verdict rests on the
    final elements only. o-mode additionally requires the entrywise sup
    ``F`` of ``|x_k|`` to have sup-norm at most ``cap`` (or to be finite
    when no cap is given).

    Parameters
    ----------
    seq : sequence of Payoff or DoubleArray
        The prefix.
    limit : Payoff or DoubleArray
        Candidate limit, same shape.
    mode : {'uo', 'o'}, optional
        Convergence notion.
    cap : float, optional
        Admissible dominator norm in o-mode.
    tolerance : float, optional
        Coordinate tolerance. Defaults to the global tolerance scaled by the
        size of the limit.
    window : int, optional
        Number of trailing elements that must lie within ``tolerance``.

    Returns
    -------
    ConvergenceWitness
        Verdict and evidence; ``bool(witness)`` is the verdict.
    """
    if mode not in ("uo", "o"):
        raise ArgumentError(f"mode must be 'uo' or 'o', got {mode!r}")
    if not seq:
        raise ArgumentError("convergence_detect needs a non-empty sequence")
    if not 1 <= window <= len(seq):
        raise ArgumentError(f"window must lie in 1..{len(seq)}, got {window}")

    target = _coordinates(limit)
    coords = [_coordinates(x) for x in seq]
    for c in coords:
        if c.shape != target.shape:
            raise DimensionError(f"Shape mismatch: {c.shape} vs limit {target.shape}")

    if tolerance is None:
        scale = float(np.max(np.abs(target))) if target.size else 0.0
        tolerance = get_settings().tolerance * (1.0 + scale)

    deviations = np.stack([np.abs(c - target) for c in coords])
    tail = np.maximum.accumulate(deviations[::-1], axis=0)[::-1]
    tail_schedule = tail.reshape(len(coords), -1).max(axis=1)
    final = deviations[-1]
    settle = len(coords) - (tail <= tolerance).sum(axis=0)
    converged = bool(np.all(settle <= len(coords) - window))

    if mode == "uo":
        witness = ConvergenceWitness(
            mode="uo",
            converged=converged,
            tail_deviation=tail_schedule,
            final_deviation=final,
            tolerance=tolerance,
            window=window,
            settle_index=settle,
        )
    else:
        dominator = _dominator(list(seq))
        norm = float(dominator.sup_norm())
        bounded = bool(np.isfinite(norm)) if cap is None else norm <= cap
        witness = ConvergenceWitness(
            mode="o",
            converged=converged and bounded,
            tail_deviation=tail_schedule,
            final_deviation=final,
            tolerance=tolerance,
            dominator=dominator,
            dominator_norm=norm,
            cap=cap,
            window=window,
            settle_index=settle,
        )
    logger.debug("convergence_detect: %r over %d elements", witness, len(seq))
    return witness


def summable_order_null(
    seq: Sequence[Element],
    weights: Any,
    budget: Optional[float] = None,
    tail_fraction: float = 1 / 16,
    tail_start: Optional[int] = None,
) -> SummabilityReport:
    """
    Order-null test for a sequence summable against a strictly positive functional.

    Computes the masses ``φ(|x_n|) = sum φ_mn |x_n,mn|`` over the prefix and
    the lim-sup array ``u = inf_k sup_{n>=k} |x_n|``. For every ``k``,
    ``φ(u) <= sum_{n>=k} φ(|x_n|)``; the prefix counts as summable when the
    tail mass from ``tail_start`` on is at most ``tail_fraction`` of the
    total mass. In that case every entry with ``φ_mn u_mn`` below the tail
    bound is set to 0. The sequence is reported order null when it is
    summable, stays within ``budget`` and ``u`` vanishes.

    Parameters
    ----------
    seq : sequence of Payoff or DoubleArray
        Order bounded prefix.
    weights : array-like, Payoff or DoubleArray
        Strictly positive weights ``φ`` with finite total mass.
    budget : float, optional
        Upper bound on the total mass.
    tail_fraction : float, optional
        Share of the total mass the tail may carry. Default is 1/16.
    tail_start : int, optional
        0-based index where the tail begins. Defaults to ``len(seq) // 2``.

    Returns
    -------
    SummabilityReport
        ``bool(report)`` is the verdict.

    Examples
    --------
    >>> seq = [DoubleArray([[2.0 ** -n]], [0.0]) for n in range(1, 11)]
    >>> bool(summable_order_null(seq, [[1.0]]))
    True
    """
    if not seq:
        raise ArgumentError("summable_order_null needs a non-empty sequence")
    if not 0 < tail_fraction < 1:
        raise ArgumentError(f"tail_fraction must lie in (0, 1), got {tail_fraction}")
    if tail_start is None:
        tail_start = len(seq) // 2
    if not 0 <= tail_start < len(seq):
        raise ArgumentError(f"tail_start must lie in 0..{len(seq) - 1}, got {tail_start}")
    if isinstance(weights, (Payoff, DoubleArray)):
        phi = _coordinates(weights)
    else:
        phi = as_values(weights)

    stack = np.stack([np.abs(_coordinates(x)) for x in seq])
    if stack.shape[1:] != phi.shape:
        raise DimensionError(f"Weights shape {phi.shape} does not match elements {stack.shape[1:]}")
    if not np.all(phi > 0):
        raise DomainError("Weights must be strictly positive")
    if not np.isfinite(phi.sum()):
        raise DomainError("Weights must have finite total mass")
    if not np.all(np.isfinite(stack)):
        raise DomainError("Sequence is not order bounded (non-finite entries)")

    axes = tuple(range(1, stack.ndim))
    masses = (stack * phi).sum(axis=axes)
    total = float(masses.sum())
    within = budget is None or total <= budget

    tail_masses = np.cumsum(masses[::-1])[::-1]
    tail_bound = float(tail_masses[tail_start])
    summable = tail_bound <= tail_fraction * total

    tail_sup = np.maximum.accumulate(stack[::-1], axis=0)[::-1]
    limsup = tail_sup.min(axis=0)
    if summable:
        slack = get_settings().tolerance * (1.0 + tail_bound)
        limsup = np.where(phi * limsup <= tail_bound + slack, 0.0, limsup)

    order_null = bool(within and summable and not np.any(limsup))
    logger.debug(
        "summable_order_null: total mass %.6g, tail mass %.6g from index %d, verdict %s",
        total, tail_bound, tail_start, order_null,
    )
    return SummabilityReport(
        order_null=order_null,
        masses=masses,
        total_mass=total,
        limsup=limsup,
        budget=budget,
        within_budget=within,
        tail_start=tail_start,
        tail_bound=tail_bound,
        tail_fraction=tail_fraction,
    )

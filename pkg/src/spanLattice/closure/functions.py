"""Order closures of sublattices at finite scale and their approximating nets."""

from __future__ import annotations
import logging
import math
from functools import reduce
from itertools import combinations
from typing import Sequence, Union

from ..config import get_settings
from ..errors import (
    ArgumentError,
    ContractError,
    DecomposeFirstError,
    DomainError,
    MeasurabilityError,
    NoApproximationError,
    NotASublatticeError,
)
from ..lab.detectors import convergence_detect
from ..lab.double_array import DoubleArray
from ..lattice import Payoff, same_space
from ..lattice.arithmetic import coerce_scalar
from ..lattice.linalg import in_span, spans_equal
from ..options.oracle import is_sublattice
from ..sigma import Partition, non_measurable_block, sigma_of
from .results import ApproxReport

logger = logging.getLogger(__name__)

Element = Union[Payoff, DoubleArray]

FREUDENTHAL_SCALES = ("range", "dyadic")
MONOTONE_SCHEMES = ("truncation", "scaling")


def uo_to_order_stage(x: Element, seq: Sequence[Element]) -> ApproxReport:
    """
    Turn a uo-convergent sequence into an order-convergent one by meeting with the target.

    Since ``|y ∧ x - x| <= |y - x| ∧ x``, the stages ``y_k ∧ x`` are
    dominated by ``x`` and converge wherever ``y_k`` does.

    Parameters
    ----------
    x : Payoff or DoubleArray
        Nonnegative target.
    seq : sequence of Payoff or DoubleArray
        Nonnegative sequence converging to ``x`` coordinatewise.

    Returns
    -------
    ApproxReport
        Stages ``y_k ∧ x`` with dominator ``x``. ``metadata['bounds']`` holds
        ``sup-norm(|y_k - x| ∧ x)`` for each stage.

    Raises
    ------
    DecomposeFirstError
        If ``x`` or an element of ``seq`` has negative entries.
    ArgumentError
        If ``seq`` does not converge to ``x`` at truncation.
    """
    if not seq:
        raise ArgumentError("uo_to_order_stage needs a non-empty sequence")
    if not x.is_nonnegative() or not all(y.is_nonnegative() for y in seq):
        raise DecomposeFirstError(
            "uo_to_order_stage works on positive elements; split into positive and negative parts"
        )

    witness = convergence_detect(seq, x, mode="uo")
    if not witness:
        raise ArgumentError("Sequence does not converge coordinatewise to the target")

    stages, errors, bounds = [], [], []
    for k, y in enumerate(seq, start=1):
        stage = y.meet(x)
        deviation = (stage - x).abs()
        bound = (y - x).abs().meet(x)
        if not deviation.dominated_by(bound):
            raise ContractError(f"|y∧x - x| <= |y - x| ∧ x fails at stage {k}")
        stages.append(stage)
        errors.append(float(deviation.sup_norm()))
        bounds.append(float(bound.sup_norm()))

    return ApproxReport(
        stages=stages,
        errors=errors,
        target=x,
        dominator=x,
        method="uo_to_order",
        metadata={"bounds": bounds, "tolerance": witness.tolerance},
    )


def smallest_order_closed_sublattice(A: Sequence[Payoff], u: Payoff) -> list[Payoff]:
    """
    Basis of the smallest order closed sublattice containing ``A`` and ``u``.

    This is ``u`` times the functions measurable with respect to the
    partition generated by the ratios ``a/u``: the basis ``u·1_B`` over its
    blocks ``B``.

    Parameters
    ----------
    A : sequence of Payoff
        Generators (may be empty).
    u : Payoff
        Weak unit.

    Returns
    -------
    list of Payoff
        Disjointly supported basis.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> len(smallest_order_closed_sublattice([Payoff(space, [0, 1, 2])], Payoff.one(space)))
    3
    """
    if not u.is_weak_unit():
        raise DomainError("smallest_order_closed_sublattice requires a weak unit u > 0")
    if A:
        same_space(list(A) + [u])
        part = sigma_of([a.ratio(u) for a in A])
    else:
        part = Partition.trivial(u.space)
    return [u.restrict(b) for b in part.blocks]


def _smallest_power_of_two_at_least(value):
    power = value * 0 + 1
    while power < value:
        power = power * 2
    while power / 2 >= value:
        power = power / 2
    return power


def freudenthal_approx(
    g: Payoff,
    part: Partition,
    levels: int,
    scale: str = "range",
) -> ApproxReport:
    """
    Lower step-function approximations of a measurable claim.

    Stage ``L`` rounds the value of ``g`` on every block down to a grid of
    step ``h_L``: ``h_L = (max g - min g)/2^L`` anchored at ``min g`` for
    ``scale='range'``, or ``h_L = 2^ceil(log2 max|g|)/2^L`` anchored at 0 for
    ``scale='dyadic'``. Stages are combinations of block indicators, increase
    with ``L`` and stay below ``g`` with error below ``h_L``.

    Parameters
    ----------
    g : Payoff
        Claim measurable with respect to ``part``.
    part : Partition
        Sigma-algebra.
    levels : int
        Number of stages (>= 1).
    scale : {'range', 'dyadic'}, optional
        Grid choice.

    Returns
    -------
    ApproxReport
        Stages, errors and the envelope ``h_L``.

    Examples
    --------
    >>> from spanLattice.lattice import Payoff, StateSpace
    >>> space = StateSpace.uniform(3)
    >>> g = Payoff(space, [0, 0.3, 0.9])
    >>> report = freudenthal_approx(g, Partition.discrete(space), 2, scale="dyadic")
    >>> report.stages[-1].tolist()
    [0.0, 0.25, 0.75]
    """
    if levels < 1:
        raise ArgumentError(f"levels must be >= 1, got {levels}")
    if scale not in FREUDENTHAL_SCALES:
        raise ArgumentError(f"scale must be one of {FREUDENTHAL_SCALES}, got {scale!r}")
    block = non_measurable_block(g, part)
    if block is not None:
        raise MeasurabilityError(
            f"Claim is not constant on block {list(block)}; no approximation by block indicators",
            block=block,
        )

    exact = g.is_exact
    zero = coerce_scalar(0, exact)
    block_vals = [g.values[b[0]] for b in part.blocks]
    if scale == "range":
        anchor = min(block_vals)
        base = max(block_vals) - anchor
    else:
        anchor = zero
        top = max(abs(v) for v in block_vals)
        base = _smallest_power_of_two_at_least(top) if top != 0 else zero
    guard = get_settings().level_tolerance

    stages, errors, envelope = [], [], []
    for level in range(1, levels + 1):
        step = base / 2 ** level
        if step == 0:
            rounded = list(block_vals)
        else:
            rounded = []
            for val in block_vals:
                ratio = (val - anchor) / step
                q = math.floor(ratio)
                if not exact and ratio - q > 1 - guard:
                    q += 1
                rounded.append(min(anchor + q * step, val))
        stage = Payoff(g.space, [rounded[label] for label in part.labels], exact=exact)
        stages.append(stage)
        errors.append(float((g - stage).sup_norm()))
        envelope.append(float(step))

    logger.debug("freudenthal_approx: %d levels, final error %g", levels, errors[-1])
    return ApproxReport(
        stages=stages,
        errors=errors,
        target=g,
        envelope=envelope,
        method=f"freudenthal_{scale}",
        metadata={"levels": levels, "scale": scale},
    )


def is_ideal_sampled(Y_basis: Sequence[Payoff]) -> bool:
    """
    Sampled ideal test: ``|b_i|/2 · 1_{i}`` lies in the span for every basis
    vector ``b`` and every state ``i`` in its support.
    """
    space = same_space(list(Y_basis))
    for b in Y_basis:
        for i in b.support():
            half = b.abs().values[i] / 2
            spike = Payoff.indicator(space, [i], exact=b.is_exact) * half
            if not in_span(Y_basis, spike):
                return False
    return True


def monotone_approximation(
    x: Payoff,
    Y_basis: Sequence[Payoff],
    steps: int = 32,
    scheme: str = "truncation",
    require_ideal: bool = True,
) -> ApproxReport:
    """
    Increasing sequence in the positive cone of a sublattice converging to ``x``.

    Builds ``z_k = inf_{j>=k} y_j`` over an approximating sequence ``y_j``
    and returns the running finite suprema ``z_1 ∨ ... ∨ z_k``.
    ``scheme='truncation'`` uses ``y_k = x ∧ (k w)`` with ``w`` the
    normalised weak unit of the sublattice; ``scheme='scaling'`` uses
    ``y_k = (1 - 1/k) x``.

    Parameters
    ----------
    x : Payoff
        Nonnegative nonzero target.
    Y_basis : sequence of Payoff
        Spanning set of the sublattice.
    steps : int, optional
        Number of stages.
    scheme : {'truncation', 'scaling'}, optional
        Approximating sequence.
    require_ideal : bool, optional
        Validate (by sampling) that the sublattice is an ideal.

    Returns
    -------
    ApproxReport
        Increasing stages dominated by ``x``; ``metadata['reached_exactly']``
        tells whether some stage equals ``x``.

    Raises
    ------
    NoApproximationError
        If ``x`` is outside the span (in finite dimensions every sublattice
        is its own order closure).
    """
    if scheme not in MONOTONE_SCHEMES:
        raise ArgumentError(f"scheme must be one of {MONOTONE_SCHEMES}, got {scheme!r}")
    if steps < 1:
        raise ArgumentError(f"steps must be >= 1, got {steps}")
    if not Y_basis:
        raise ArgumentError("monotone_approximation needs a non-empty basis")
    if not x.is_nonnegative() or not x.support():
        raise DomainError("monotone_approximation requires x >= 0 and x != 0")
    same_space(list(Y_basis) + [x])
    if not is_sublattice(Y_basis):
        raise NotASublatticeError("Span of Y_basis is not closed under meets and joins")
    if require_ideal and not is_ideal_sampled(Y_basis):
        raise ArgumentError("Span of Y_basis is not an ideal")
    if not in_span(Y_basis, x):
        raise NoApproximationError("x is not in the sublattice, which is its own order closure here")

    exact = x.is_exact and all(b.is_exact for b in Y_basis)
    weight = reduce(lambda acc, b: acc + b.abs(), Y_basis[1:], Y_basis[0].abs())
    w = weight / weight.max()

    one = coerce_scalar(1, exact)
    if scheme == "truncation":
        approximants = [x.meet(w * k) for k in range(1, steps + 1)]
    else:
        approximants = [x * (one - one / k) for k in range(1, steps + 1)]

    stages, errors = [], []
    running = None
    for k in range(steps):
        z = reduce(lambda acc, y: acc.meet(y), approximants[k + 1:], approximants[k])
        running = z if running is None else running.join(z)
        stages.append(running)
        errors.append(float((x - running).sup_norm()))

    tol = get_settings().tolerance * (1.0 + float(x.sup_norm()))
    reached = any(e <= (0 if exact else tol) for e in errors)
    return ApproxReport(
        stages=stages,
        errors=errors,
        target=x,
        dominator=x,
        method=f"monotone_{scheme}",
        metadata={"reached_exactly": reached, "tolerance": tol},
    )


def is_order_closed(Y_basis: Sequence[Payoff], u: Payoff) -> bool:
    """
    Whether a sublattice containing the weak unit ``u`` is order closed.

    True iff its span equals the ``u``-scaled measurable space of the
    partition it generates (always the case in finite dimensions).
    """
    if not Y_basis:
        raise ArgumentError("is_order_closed needs a non-empty basis")
    if not is_sublattice(Y_basis):
        raise NotASublatticeError("Span of Y_basis is not closed under meets and joins")
    if not in_span(Y_basis, u):
        raise ArgumentError("The weak unit u must lie in the sublattice")
    return spans_equal(smallest_order_closed_sublattice(Y_basis, u), list(Y_basis))


def supremum_criterion(S_basis: Sequence[Payoff], elements: Sequence[Payoff], max_elements: int = 12) -> bool:
    """
    Finite suprema of elements of ``span(S_basis)`` stay in the span.

    Every nonempty subset of ``elements`` is checked.
    """
    if len(elements) > max_elements:
        raise ArgumentError(f"At most {max_elements} elements can be checked, got {len(elements)}")
    for el in elements:
        if not in_span(S_basis, el):
            raise ArgumentError("Every sampled element must lie in span(S_basis)")
    for r in range(2, len(elements) + 1):
        for subset in combinations(elements, r):
            if not in_span(S_basis, reduce(lambda a, b: a.join(b), subset)):
                return False
    return True

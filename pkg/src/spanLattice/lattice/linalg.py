"""Span computations on payoff vectors.

Float payoffs go through numpy/scipy; exact payoffs (Fraction object arrays)
through sympy rational matrices, so rank and membership are decidable.
"""

from __future__ import annotations
import logging
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg
import sympy

from ..errors import ArgumentError
from .arithmetic import as_values, comparison_tolerance, membership_tolerance, zeros
from .base import Payoff, same_space

logger = logging.getLogger(__name__)


class SpanSolution(NamedTuple):
    """Least-squares (or exact) coefficients of a target in a span."""

    coefficients: np.ndarray
    residual: float
    member: bool


def _exact(vectors: Sequence[Payoff]) -> bool:
    return bool(vectors) and all(v.is_exact for v in vectors)


def _to_sympy(rows: np.ndarray) -> sympy.Matrix:
    return sympy.Matrix(
        rows.shape[0],
        rows.shape[1],
        [sympy.Rational(v.numerator, v.denominator) for v in rows.ravel()],
    )


def _from_sympy(value: sympy.Rational) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def stack(vectors: Sequence[Payoff], exact: bool = None) -> np.ndarray:
    """Matrix whose rows are the payoff values."""
    if not vectors:
        raise ArgumentError("Need at least one payoff to stack")
    same_space(vectors)
    if exact is None:
        exact = _exact(vectors)
    return np.vstack([as_values(v.values, exact=exact) for v in vectors])


def rank(vectors: Sequence[Payoff]) -> int:
    """Dimension of the span of ``vectors`` (0 for an empty list)."""
    if not vectors:
        return 0
    rows = stack(vectors)
    if _exact(vectors):
        return int(_to_sympy(rows).rank())
    if not np.any(rows):
        return 0
    return int(np.linalg.matrix_rank(rows))


def independent_indices(vectors: Sequence[Payoff]) -> list[int]:
    """
    Greedy maximal linearly independent subset, in input order.

    Parameters
    ----------
    vectors : sequence of Payoff
        Candidate vectors.

    Returns
    -------
    list of int
        Indices of the kept vectors.
    """
    kept: list[int] = []
    current = 0
    for i in range(len(vectors)):
        r = rank([vectors[j] for j in kept] + [vectors[i]])
        if r > current:
            kept.append(i)
            current = r
    return kept


def solve_in_span(vectors: Sequence[Payoff], target: Payoff) -> SpanSolution:
    """
    Express ``target`` in the span of ``vectors``.

    Float mode solves least squares with :func:`scipy.linalg.lstsq` and
    declares membership when the max-norm residual is below the membership
    tolerance. Exact mode solves the rational system with sympy.

    Parameters
    ----------
    vectors : sequence of Payoff
        Spanning vectors (may be dependent).
    target : Payoff
        Vector to express.

    Returns
    -------
    SpanSolution
        Coefficients, max-norm residual and membership verdict.
    """
    if not vectors:
        residual = float(target.sup_norm())
        tol = membership_tolerance(target.values)
        return SpanSolution(np.zeros(0), residual, residual <= tol)

    same_space(list(vectors) + [target])
    exact = _exact(vectors) and target.is_exact

    if exact:
        rows = stack(vectors, exact=True)
        A = _to_sympy(rows).T
        b = _to_sympy(target.values.reshape(-1, 1))
        try:
            sol, params = A.gauss_jordan_solve(b)
        except ValueError:
            sol = None
        if sol is not None:
            if params.shape[0] > 0:
                sol = sol.subs({p: 0 for p in params})
            coeffs = np.array([_from_sympy(c) for c in sol], dtype=object)
            return SpanSolution(coeffs, 0.0, True)

    A = stack(vectors, exact=False).T
    b = as_values(target.values)
    coeffs, *_ = scipy.linalg.lstsq(A, b)
    residual = float(np.max(np.abs(A @ coeffs - b))) if b.size else 0.0
    if exact:
        return SpanSolution(coeffs, residual, False)
    member = residual <= membership_tolerance(b)
    return SpanSolution(coeffs, residual, bool(member))


def in_span(vectors: Sequence[Payoff], target: Payoff) -> bool:
    return solve_in_span(vectors, target).member


def span_contains(basis: Sequence[Payoff], others: Sequence[Payoff]) -> bool:
    """Every vector of ``others`` lies in ``span(basis)``."""
    return all(in_span(basis, v) for v in others)


def spans_equal(a: Sequence[Payoff], b: Sequence[Payoff]) -> bool:
    """Mutual span containment."""
    return rank(a) == rank(b) and span_contains(a, b) and span_contains(b, a)


def combine(vectors: Sequence[Payoff], coefficients: Sequence) -> Payoff:
    """Linear combination ``sum c_i v_i``."""
    if not vectors:
        raise ArgumentError("Need at least one vector to combine")
    exact = _exact(vectors)
    total = zeros(vectors[0].n, exact=exact)
    for v, c in zip(vectors, coefficients):
        total = total + v.values * c
    return Payoff(vectors[0].space, total, exact=exact)


def reduced_basis(vectors: Sequence[Payoff]) -> list[Payoff]:
    """
    Basis of the span in reduced form: the identity on a set of pivot states.

    Exact mode uses sympy's reduced row echelon form. Float mode picks
    pivot states by column-pivoted QR and solves for the reduced rows;
    entries below the comparison tolerance are set to zero.

    Parameters
    ----------
    vectors : sequence of Payoff
        Spanning vectors.

    Returns
    -------
    list of Payoff
        One reduced vector per dimension of the span.
    """
    if not vectors:
        return []
    space = same_space(vectors)
    rows = stack(vectors)

    if _exact(vectors):
        rref, pivots = _to_sympy(rows).rref()
        return [
            Payoff(space, [_from_sympy(rref[i, j]) for j in range(rows.shape[1])], exact=True)
            for i in range(len(pivots))
        ]

    basis_rows = rows[independent_indices(vectors)]
    if basis_rows.shape[0] == 0:
        return []
    d = basis_rows.shape[0]
    _, _, perm = scipy.linalg.qr(basis_rows, pivoting=True, mode="economic")
    pivots = np.sort(perm[:d])
    reduced = scipy.linalg.solve(basis_rows[:, pivots], basis_rows)
    tol = comparison_tolerance(reduced)
    reduced[np.abs(reduced) <= tol] = 0.0
    reduced[:, pivots] = np.eye(d)
    return [Payoff(space, row) for row in reduced]

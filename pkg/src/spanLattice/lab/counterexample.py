"""The double-sequence counterexample: a sequence converging uo but not in order.

Two generators ``u`` and ``v`` are built row by row so that every lattice
expression ``z`` in them satisfies ``lim_n z_mn = m * z_m1``. Differences of
option spreads in ``v`` against ``u`` then isolate the first column of
single rows, giving elements ``y^j`` that converge coordinatewise to the
first-column indicator ``e`` while any element close to ``e`` in row ``m``
must have sup-norm at least ``m/2``.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

import numpy as np

from ..errors import ArgumentError, ContractError, InvalidParametersError
from ..lattice.arithmetic import as_values, coerce_scalar, comparison_tolerance, is_exact_array
from ..options.expr import Generator, LatticeExpr, random_lattice_expr
from .double_array import DoubleArray

logger = logging.getLogger(__name__)

GENERATOR_U = "u"
GENERATOR_V = "v"


@dataclass(frozen=True, eq=False)
class CounterexampleParams:
    """
    Level parameters ``c_m`` and ``c_{mn}`` of the counterexample.

    Attributes
    ----------
    c : np.ndarray
        ``c[m-1] = c_m`` for ``m = 1..rows+1``.
    c_grid : np.ndarray
        ``c_grid[m-1, n-1] = c_{mn}``, shape ``(rows+1, width)``.
    rows : int
        Row truncation M.
    cols : int
        Column truncation N.

    Notes
    -----
    Required ordering: each row ``c_{m,1} < c_{m,2} < ...`` increases
    strictly below ``c_m``, and ``0 < c_m < c_{m+1,n} < 1``.
    """

    c: np.ndarray
    c_grid: np.ndarray
    rows: int
    cols: int

    def __post_init__(self):
        self.validate()

    @classmethod
    def default(cls, rows: int, cols: int, exact: bool = True) -> CounterexampleParams:
        """
        Dyadic parameters ``c_m = 1 - 2^-(m+1)``, ``c_{mn} = c_m - 2^-(m+1+n)``.

        ``c_{mn}`` is stored for ``n <= max(cols, rows+1)`` so every ``y^j``
        with ``j <= rows`` can be formed.

        Examples
        --------
        >>> p = CounterexampleParams.default(3, 3, exact=True)
        >>> p.c_m(2), p.c_mn(2, 1)
        (Fraction(7, 8), Fraction(13, 16))
        """
        if rows < 2 or cols < 2:
            raise ArgumentError(f"Counterexample needs rows, cols >= 2, got {rows}x{cols}")
        width = max(cols, rows + 1)

        def power(k: int):
            return Fraction(1, 2 ** k) if exact else 2.0 ** -k

        one = Fraction(1) if exact else 1.0
        c = np.empty(rows + 1, dtype=object if exact else float)
        grid = np.empty((rows + 1, width), dtype=object if exact else float)
        for m in range(1, rows + 2):
            c[m - 1] = one - power(m + 1)
            for n in range(1, width + 1):
                grid[m - 1, n - 1] = c[m - 1] - power(m + 1 + n)
        return cls(c=c, c_grid=grid, rows=rows, cols=cols)

    @property
    def exact(self) -> bool:
        return is_exact_array(self.c)

    @property
    def width(self) -> int:
        return self.c_grid.shape[1]

    def c_m(self, m: int):
        return self.c[m - 1]

    def c_mn(self, m: int, n: int):
        return self.c_grid[m - 1, n - 1]

    def validate(self) -> None:
        """Check shapes and the ordering chain; raise InvalidParametersError."""
        M = self.rows
        if M < 2 or self.cols < 2:
            raise InvalidParametersError(f"Need rows, cols >= 2, got {M}x{self.cols}")
        if self.c.shape != (M + 1,):
            raise InvalidParametersError(f"c needs {M + 1} values, got shape {self.c.shape}")
        if self.c_grid.ndim != 2 or self.c_grid.shape[0] != M + 1:
            raise InvalidParametersError(f"c_grid needs {M + 1} rows, got shape {self.c_grid.shape}")
        if self.c_grid.shape[1] < self.cols - 1:
            raise InvalidParametersError(
                f"c_grid needs at least {self.cols - 1} columns, got {self.c_grid.shape[1]}"
            )

        if not (np.all(self.c > 0) and np.all(self.c < 1)):
            raise InvalidParametersError("Need 0 < c_m < 1 for every m")
        if not np.all(self.c_grid > 0):
            raise InvalidParametersError("Need c_{mn} > 0")
        if self.c_grid.shape[1] > 1 and not np.all(np.diff(self.c_grid, axis=1) > 0):
            raise InvalidParametersError("Each row c_{m1} < c_{m2} < ... must increase strictly")
        if not np.all(self.c_grid < self.c.reshape(-1, 1)):
            raise InvalidParametersError("Need c_{mn} < c_m")
        if not np.all(self.c[:-1] < self.c_grid[1:, 0]):
            raise InvalidParametersError("Need c_m < c_{m+1,n}")

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"CounterexampleParams(rows={self.rows}, cols={self.cols}, width={self.width}, {mode})"


class Counterexample(NamedTuple):
    u: DoubleArray
    v: DoubleArray
    e: DoubleArray
    params: CounterexampleParams


class ObstructionCertificate(NamedTuple):
    """``holds`` iff ``|z_m1 - 1| < 1/2``; then ``sup-norm(z) >= bound = m/2``."""

    holds: bool
    bound: object


def build_counterexample(
    rows: int,
    cols: int,
    exact: bool = True,
    params: Optional[CounterexampleParams] = None,
) -> Counterexample:
    """
    Generators ``u``, ``v`` and target ``e`` truncated to ``rows x cols``.

    ``u_m1 = 1/m``, ``u_{m,n+1} = 1``; ``v_m1 = c_m/m``, ``v_{m,n+1} = c_{mn}``;
    ``e`` is the indicator of the first column. Row limits are ``1``, ``c_m``
    and ``0``.

    Parameters
    ----------
    rows, cols : int
        Truncation (both >= 2).
    exact : bool, optional
        Fraction arithmetic (default). Float mode loses the exact
        identities once the spread widths approach machine precision.
    params : CounterexampleParams, optional
        Override of the default dyadic parameters.

    Returns
    -------
    Counterexample
        ``(u, v, e, params)``.

    Examples
    --------
    >>> ce = build_counterexample(3, 3, exact=True)
    >>> ce.u.entry(3, 1)
    Fraction(1, 3)
    """
    if rows < 2 or cols < 2:
        raise ArgumentError(f"Counterexample needs rows, cols >= 2, got {rows}x{cols}")
    if params is None:
        params = CounterexampleParams.default(rows, cols, exact=exact)
    elif params.rows != rows or params.cols != cols:
        raise InvalidParametersError(
            f"Parameters are for {params.rows}x{params.cols}, requested {rows}x{cols}"
        )
    return Counterexample(*_generators(params), params)


@lru_cache(maxsize=8)
def _generators(params: CounterexampleParams) -> tuple[DoubleArray, DoubleArray, DoubleArray]:
    exact = params.exact
    M, N = params.rows, params.cols
    dtype = object if exact else float
    one = coerce_scalar(1, exact)
    zero = coerce_scalar(0, exact)

    u = np.full((M, N), one, dtype=dtype)
    v = np.empty((M, N), dtype=dtype)
    e = np.full((M, N), zero, dtype=dtype)
    for m in range(1, M + 1):
        u[m - 1, 0] = one / m
        v[m - 1, 0] = params.c_m(m) / m
        for n in range(1, N):
            v[m - 1, n] = params.c_mn(m, n)
    e[:, 0] = one

    u_arr = DoubleArray(u, np.full(M, one, dtype=dtype), exact=exact, row_law_validated=True)
    v_arr = DoubleArray(v, params.c[:M], exact=exact, row_law_validated=True)
    e_arr = DoubleArray(e, np.full(M, zero, dtype=dtype), exact=exact)
    return u_arr, v_arr, e_arr


def _assignment(params: CounterexampleParams) -> dict:
    u, v, _ = _generators(params)
    return {GENERATOR_U: u, GENERATOR_V: v}


def default_strikes(k: int, j: int, params: CounterexampleParams) -> tuple:
    """``(α, α', β, β')`` at the 1/3 and 2/3 points of their admissible intervals."""
    lo_a, hi_a = params.c_mn(k, j), params.c_mn(k, j + 1)
    lo_b, hi_b = params.c_m(k), params.c_mn(k + 1, 1)
    third = coerce_scalar(Fraction(1, 3), params.exact)
    return (
        lo_a + (hi_a - lo_a) * third,
        lo_a + (hi_a - lo_a) * 2 * third,
        lo_b + (hi_b - lo_b) * third,
        lo_b + (hi_b - lo_b) * 2 * third,
    )


def _check_kj(k: int, j: int, params: CounterexampleParams) -> None:
    if not 1 <= k <= params.rows:
        raise ArgumentError(f"Row index k={k} outside 1..{params.rows}")
    if j < 1:
        raise ArgumentError(f"j must be >= 1, got {j}")
    if j + 1 > params.width:
        raise ArgumentError(
            f"Truncation too small: x^(k,j) needs c_(k,{j + 1}) but only {params.width} levels are stored"
        )


def xkj_expression(
    k: int,
    j: int,
    params: CounterexampleParams,
    strikes: Optional[Sequence] = None,
) -> LatticeExpr:
    """
    Expression for ``x^{kj}`` as a difference of two normalised spreads.

    ``[(v - βu)^+ - (v - β'u)^+]/(β - β') - [(v - αu)^+ - (v - α'u)^+]/(α - α')``
    with ``c_kj < α < α' < c_{k,j+1}`` and ``c_k < β < β' < c_{k+1,1}``.
    """
    _check_kj(k, j, params)
    if strikes is None:
        strikes = default_strikes(k, j, params)
    if len(strikes) != 4:
        raise ArgumentError(f"strikes must be (alpha, alpha', beta, beta'), got {len(strikes)} values")
    alpha, alpha2, beta, beta2 = (coerce_scalar(s, params.exact) for s in strikes)

    if not params.c_mn(k, j) < alpha < alpha2 < params.c_mn(k, j + 1):
        raise ArgumentError(f"Need c_(k,j) < alpha < alpha' < c_(k,j+1) for k={k}, j={j}")
    if not params.c_m(k) < beta < beta2 < params.c_mn(k + 1, 1):
        raise ArgumentError(f"Need c_k < beta < beta' < c_(k+1,1) for k={k}")

    u, v = Generator(GENERATOR_U), Generator(GENERATOR_V)
    one = coerce_scalar(1, params.exact)
    upper = ((v - beta * u).pos() - (v - beta2 * u).pos()) * (one / (beta - beta2))
    lower = ((v - alpha * u).pos() - (v - alpha2 * u).pos()) * (one / (alpha - alpha2))
    return upper - lower


@lru_cache(maxsize=4096)
def _xkj_default(params: CounterexampleParams, k: int, j: int) -> DoubleArray:
    return validate_row_law(xkj_expression(k, j, params).evaluate(_assignment(params)))


def xkj(
    k: int,
    j: int,
    params: CounterexampleParams,
    strikes: Optional[Sequence] = None,
) -> DoubleArray:
    """
    The element ``x^{kj}``.

    It satisfies ``k x_k1 = 1``, ``x_kn = 0`` for ``2 <= n <= j+1`` and
    vanishes outside row ``k``.

    Examples
    --------
    >>> p = CounterexampleParams.default(4, 4, exact=True)
    >>> 2 * xkj(2, 1, p).entry(2, 1)
    Fraction(1, 1)
    """
    if strikes is None:
        _check_kj(k, j, params)
        return _xkj_default(params, k, j)
    return validate_row_law(xkj_expression(k, j, params, strikes).evaluate(_assignment(params)))


def xkj_identities_hold(x: DoubleArray, k: int, j: int) -> bool:
    """Check ``k x_k1 = 1``, ``x_kn = 0`` for ``2 <= n <= j+1`` and zero rows ``m != k``."""
    tol = comparison_tolerance(x.entries)
    ent = x.entries
    if abs(k * ent[k - 1, 0] - 1) > tol:
        return False
    last = min(j + 1, x.cols)
    if last >= 2 and np.any(np.abs(ent[k - 1, 1:last]) > tol):
        return False
    others = np.delete(ent, k - 1, axis=0)
    return not np.any(np.abs(others) > tol)


def yj_expression(j: int, params: CounterexampleParams) -> LatticeExpr:
    """Expression for ``y^j = sum_{k<=min(j, M)} k x^{kj}``."""
    _check_j(j, params)
    expr = xkj_expression(1, j, params)
    for k in range(2, min(j, params.rows) + 1):
        expr = expr + xkj_expression(k, j, params) * k
    return expr


def _check_j(j: int, params: CounterexampleParams) -> None:
    if j < 1:
        raise ArgumentError(f"y^j needs j >= 1, got j={j}")
    if j + 1 > params.width:
        raise ArgumentError(
            f"Truncation too small: y^{j} needs {j + 1} stored levels, have {params.width}"
        )


def yj(j: int, params: CounterexampleParams) -> DoubleArray:
    """
    The element ``y^j = sum_{k=1}^{j} k x^{kj}``.

    ``y^j_m1 = 1`` and ``y^j_mn = 0`` (``2 <= n <= j+1``) for ``m <= j``;
    rows ``m > j`` vanish. Rows beyond the truncation ``M`` are not stored,
    so the sum stops at ``k = min(j, M)``; ``j`` may run up to ``width - 1``.
    """
    _check_j(j, params)
    total = _xkj_default(params, 1, j)
    for k in range(2, min(j, params.rows) + 1):
        total = total + _xkj_default(params, k, j) * k
    return total.validated()


def y_sequence(params: CounterexampleParams, count: Optional[int] = None) -> list[DoubleArray]:
    """
    ``[y^1, ..., y^count]``.

    ``count`` defaults to ``width - 1 = max(M, N - 1)``, the last ``j`` for
    which ``y^j`` agrees with ``e`` on every stored column.
    """
    count = params.width - 1 if count is None else count
    return [yj(j, params) for j in range(1, count + 1)]


def row_limit_residuals(z: DoubleArray) -> np.ndarray:
    """``limit_col[m] - m * z_m1`` for every row."""
    m = np.arange(1, z.rows + 1)
    if z.is_exact:
        m = as_values(m, exact=True)
    return z.limit_col - m * z.first_column


def validate_row_law(z: DoubleArray) -> DoubleArray:
    """
    Return ``z`` flagged as satisfying ``lim_n z_mn = m z_m1``.

    Raises
    ------
    ContractError
        If some row violates the law.
    """
    residuals = row_limit_residuals(z)
    tol = comparison_tolerance(z.entries)
    bad = np.flatnonzero(np.abs(residuals) > tol)
    if bad.size:
        raise ContractError(
            f"Row-limit law lim z_mn = m z_m1 fails at rows {(bad + 1).tolist()}"
        )
    return z.validated()


def row_limit_law(expr: LatticeExpr, params: CounterexampleParams) -> np.ndarray:
    """
    Residuals of ``lim_n z_mn = m z_m1`` for an expression in ``u`` and ``v``.

    All residuals are 0 in exact mode (and below the tolerance in float
    mode): the law holds for ``u`` and ``v`` and survives linear and lattice
    operations because ``m > 0``.

    Examples
    --------
    >>> p = CounterexampleParams.default(5, 5, exact=True)
    >>> expr = (Generator("v") - Fraction(1, 2) * Generator("u")).pos() & Generator("u")
    >>> set(row_limit_law(expr, p).tolist())
    {Fraction(0, 1)}
    """
    z = expr.evaluate(_assignment(params))
    return row_limit_residuals(z)


def evaluate_on_counterexample(expr: LatticeExpr, params: CounterexampleParams) -> DoubleArray:
    """Evaluate an expression in ``u``, ``v`` and validate its row-limit law."""
    return validate_row_law(expr.evaluate(_assignment(params)))


def obstruction_certificate(z: DoubleArray, m: int) -> ObstructionCertificate:
    """
    Lower bound on the sup-norm of an element that approximates ``e`` in row ``m``.

    If ``|z_m1 - 1| < 1/2`` then ``z_m1 > 1/2`` and, by the row-limit law,
    the row limit ``m z_m1`` exceeds ``m/2``.

    Parameters
    ----------
    z : DoubleArray
        Element with a validated row-limit law.
    m : int
        Row (1-based).

    Returns
    -------
    ObstructionCertificate
        ``(True, m/2)`` or ``(False, 0)``.
    """
    if not z.row_law_validated:
        raise ContractError("obstruction_certificate needs a row-limit-law validated array")
    if not 1 <= m <= z.rows:
        raise ArgumentError(f"Row m={m} outside 1..{z.rows}")

    half = coerce_scalar(Fraction(1, 2), z.is_exact)
    if not abs(z.entry(m, 1) - 1) < half:
        return ObstructionCertificate(False, coerce_scalar(0, z.is_exact))

    bound = half * m
    if z.sup_norm() < bound - comparison_tolerance(z.entries):
        raise ContractError(f"Row {m} violates the row-limit law: sup-norm below {bound}")
    return ObstructionCertificate(True, bound)


def sample_e_approximants(
    params: CounterexampleParams,
    rng: np.random.Generator,
    count: int = 10,
    depth: int = 3,
) -> list[DoubleArray]:
    """
    Random elements of the sublattice generated by ``u``, ``v`` that stay
    within 1/2 of ``e`` on the first column of every row.

    Each sample is ``y^M + s w`` with ``w`` a random lattice expression and
    ``s`` scaling the first column of ``w`` below ``2/5`` in absolute value.
    """
    base = yj(params.rows, params)
    limit = coerce_scalar(Fraction(2, 5), params.exact)
    samples = []
    for _ in range(count):
        expr = random_lattice_expr(rng, depth, (GENERATOR_U, GENERATOR_V), exact=params.exact)
        w = expr.evaluate(_assignment(params))
        scale = np.max(np.abs(w.first_column))
        if scale != 0:
            w = w * (limit / scale)
        samples.append(validate_row_law(base + w))
    logger.debug("sample_e_approximants: drew %d samples of depth <= %d", count, depth)
    return samples


def random_row_law_trials(
    params: CounterexampleParams,
    rng: np.random.Generator,
    trials: int,
    max_depth: int = 6,
) -> np.ndarray:
    """Largest absolute row-limit residual of each of ``trials`` random expressions."""
    worst = []
    for _ in range(trials):
        depth = int(rng.integers(0, max_depth + 1))
        expr = random_lattice_expr(rng, depth, (GENERATOR_U, GENERATOR_V), exact=params.exact)
        worst.append(np.max(np.abs(row_limit_law(expr, params))))
    return np.array(worst, dtype=object if params.exact else float)

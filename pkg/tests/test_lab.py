from fractions import Fraction

import numpy as np
import pytest

from spanLattice.errors import ArgumentError, ContractError, DimensionError, InvalidParametersError
from spanLattice.lab import (
    CounterexampleParams,
    DoubleArray,
    build_counterexample,
    convergence_detect,
    default_strikes,
    evaluate_on_counterexample,
    obstruction_certificate,
    random_row_law_trials,
    row_limit_law,
    sample_e_approximants,
    summable_order_null,
    validate_row_law,
    xkj,
    xkj_identities_hold,
    y_sequence,
    yj,
)
from spanLattice.lattice import Payoff
from spanLattice.options import Generator

SIZE = 25


@pytest.fixture(scope="module")
def big():
    return build_counterexample(SIZE, SIZE, exact=True)


@pytest.fixture(scope="module")
def big_ys(big):
    return y_sequence(big.params)


class TestDoubleArray:
    def test_accessors(self):
        z = DoubleArray([[1, 0], [2, 0]], [1, 4])
        assert z.shape == (2, 2)
        assert z.entry(2, 1) == 2.0
        assert z.limit(2) == 4.0
        assert z.first_column.tolist() == [1.0, 2.0]

    def test_lattice_operations_include_limits(self):
        a = DoubleArray([[1, -2]], [3])
        b = DoubleArray([[0, 1]], [-1])
        assert (a & b).limit_col.tolist() == [-1.0]
        assert (a | b).entries.tolist() == [[1.0, 1.0]]
        assert a.abs().sup_norm() == 3.0
        assert a.pos_part().entries.tolist() == [[1.0, 0.0]]

    def test_shape_checks(self):
        with pytest.raises(DimensionError):
            DoubleArray([[1, 2]], [1, 2])
        with pytest.raises(DimensionError):
            DoubleArray([[1, 2]], [1]) + DoubleArray([[1], [2]], [1, 2])

    def test_frame_and_csv(self, tmp_path):
        z = DoubleArray([[Fraction(1, 2), 0]], [Fraction(1)], exact=True)
        frame = z.to_frame(formatted=True)
        assert list(frame.columns) == ["n=1", "n=2", "limit"]
        assert frame.iloc[0].tolist() == ["1/2", "0", "1"]
        path = tmp_path / "z.csv"
        z.to_csv(path)
        assert path.read_text().splitlines()[1] == "1,1/2,0,1"


class TestParameters:
    def test_dyadic_defaults(self):
        p = CounterexampleParams.default(3, 3, exact=True)
        assert p.c_m(2) == Fraction(7, 8)
        assert p.c_mn(2, 1) == Fraction(13, 16)
        assert p.width == 4

    def test_width_covers_every_y(self):
        p = CounterexampleParams.default(6, 2, exact=True)
        assert p.width == 7
        assert len(y_sequence(p)) == 6

    def test_ordering_chain_is_validated(self):
        p = CounterexampleParams.default(3, 3, exact=True)
        bad = p.c_grid.copy()
        bad[0, 1] = bad[0, 0]
        with pytest.raises(InvalidParametersError):
            CounterexampleParams(c=p.c, c_grid=bad, rows=3, cols=3)
        with pytest.raises(InvalidParametersError):
            CounterexampleParams(c=p.c[::-1].copy(), c_grid=p.c_grid, rows=3, cols=3)

    def test_truncation_too_small(self):
        with pytest.raises(ArgumentError):
            build_counterexample(1, 5)


class TestGenerators:
    def test_u_v_e(self):
        ce = build_counterexample(4, 4, exact=True)
        assert ce.u.entry(3, 1) == Fraction(1, 3)
        assert ce.u.entry(3, 2) == 1
        assert ce.v.entry(2, 1) == Fraction(7, 16)
        assert ce.v.limit(2) == Fraction(7, 8)
        assert ce.e.first_column.tolist() == [1, 1, 1, 1]
        assert ce.e.sup_norm() == 1

    def test_xkj_identities_hold_exactly(self, big):
        for j in range(1, SIZE + 1):
            for k in range(1, j + 1):
                assert xkj_identities_hold(xkj(k, j, big.params), k, j), (k, j)

    def test_xkj_is_nonnegative_and_on_one_row(self, big):
        x = xkj(3, 5, big.params)
        assert x.is_nonnegative()
        assert 3 * x.entry(3, 1) == 1
        assert x.limit(3) == 1

    def test_custom_strikes(self):
        p = CounterexampleParams.default(4, 4, exact=True)
        a, a2, b, b2 = default_strikes(2, 1, p)
        x = xkj(2, 1, p, strikes=((a + a2) / 2, a2, b, b2))
        assert xkj_identities_hold(x, 2, 1)
        with pytest.raises(ArgumentError):
            xkj(2, 1, p, strikes=(a2, a, b, b2))

    def test_y_shape(self, big_ys):
        y = big_ys[4]
        assert [y.entry(m, 1) for m in range(1, 6)] == [1] * 5
        assert all(y.entry(m, n) == 0 for m in range(1, 6) for n in range(2, 7))
        assert all(y.entry(m, 1) == 0 for m in range(6, SIZE + 1))

    def test_yj_index_checks(self):
        p = CounterexampleParams.default(3, 3, exact=True)
        with pytest.raises(ArgumentError):
            yj(4, p)
        with pytest.raises(ArgumentError):
            yj(0, p)

    def test_yj_beyond_the_stored_rows(self):
        p = CounterexampleParams.default(3, 10, exact=True)
        y = yj(5, p)
        assert [y.entry(m, 1) for m in range(1, 4)] == [1] * 3
        assert all(y.entry(m, n) == 0 for m in range(1, 4) for n in range(2, 7))
        with pytest.raises(ArgumentError):
            yj(10, p)

    def test_wide_truncation_reaches_e(self):
        ce = build_counterexample(5, 12, exact=True)
        ys = y_sequence(ce.params)
        assert len(ys) == 11
        assert np.all(ys[-1].entries == ce.e.entries)
        witness = convergence_detect(ys, ce.e, mode="uo")
        assert witness
        assert witness.tail_deviation[-1] == 0

    def test_float_mode_small_truncation(self):
        ce = build_counterexample(4, 4, exact=False)
        for y in y_sequence(ce.params):
            assert y.entry(1, 1) == pytest.approx(1.0)
            assert np.all(np.abs(row_limit_law_residuals(y)) <= 1e-9)


def row_limit_law_residuals(z):
    m = np.arange(1, z.rows + 1)
    return np.asarray(z.limit_col, dtype=float) - m * np.asarray(z.first_column, dtype=float)


class TestRowLimitLaw:
    def test_example_expression(self):
        p = CounterexampleParams.default(5, 5, exact=True)
        expr = (Generator("v") - Fraction(1, 2) * Generator("u")).pos() & Generator("u")
        assert set(row_limit_law(expr, p).tolist()) == {Fraction(0)}

    def test_random_expressions_have_zero_residual(self, big, rng):
        worst = random_row_law_trials(big.params, rng, trials=300, max_depth=6)
        assert len(worst) == 300
        assert all(w == 0 for w in worst)

    def test_violations_are_reported(self):
        z = DoubleArray([[1, 0], [1, 0]], [1, 1])
        with pytest.raises(ContractError):
            validate_row_law(z)

    def test_evaluate_marks_validation(self):
        p = CounterexampleParams.default(3, 3, exact=True)
        z = evaluate_on_counterexample(Generator("u") + Generator("v"), p)
        assert z.row_law_validated


class TestObstruction:
    def test_requires_validated_input(self, big):
        with pytest.raises(ContractError):
            obstruction_certificate(big.e, 1)

    def test_bound_is_half_the_row(self, big_ys):
        z = big_ys[-1]
        for m in (1, 10, SIZE):
            cert = obstruction_certificate(z, m)
            assert cert.holds
            assert cert.bound == Fraction(m, 2)

    def test_sampled_approximants_are_large(self, big, rng):
        samples = sample_e_approximants(big.params, rng, count=10, depth=3)
        for z in samples:
            assert all(abs(z.entry(m, 1) - 1) < Fraction(1, 2) for m in range(1, SIZE + 1))
            assert z.sup_norm() >= Fraction(25, 2)
            assert obstruction_certificate(z, SIZE).holds


class TestDetectors:
    def test_y_sequence_converges_uo_to_e(self, big, big_ys):
        witness = convergence_detect(big_ys, big.e, mode="uo")
        assert witness
        assert witness.prefix_length == SIZE
        assert witness.tail_deviation[-1] == 0
        assert witness.caveat

    def test_y_sequence_is_not_order_bounded_by_cap(self, big, big_ys):
        witness = convergence_detect(big_ys, big.e, mode="o", cap=1.0)
        assert not witness
        assert witness.dominator_norm == SIZE

    def test_convergence_detect_argument_checks(self, big):
        with pytest.raises(ArgumentError):
            convergence_detect([], big.e)
        with pytest.raises(ArgumentError):
            convergence_detect([big.e], big.e, mode="norm")
        with pytest.raises(ArgumentError):
            convergence_detect([big.e], big.e, window=0)
        with pytest.raises(ArgumentError):
            convergence_detect([big.e], big.e, window=2)

    def test_window_rejects_a_late_landing(self, space3):
        x = Payoff(space3, [1, 2, 0])
        seq = [x, x * 5.0, x, x * 5.0, x]
        witness = convergence_detect(seq, x, mode="uo")
        assert witness
        assert witness.settle_index.tolist() == [4, 4, 0]
        assert witness.to_dict()["last_settle_index"] == 4
        assert not convergence_detect(seq, x, mode="uo", window=2)
        assert convergence_detect(seq + [x], x, mode="uo", window=2)

    def test_settle_index_of_y_sequence(self, big, big_ys):
        witness = convergence_detect(big_ys, big.e, mode="uo")
        assert witness.settle_index[0, 0] == 0
        assert witness.settle_index[SIZE - 1, 0] == SIZE - 1
        assert witness.window == 1

    def test_geometric_sequences_are_order_null(self, rng):
        for _ in range(100):
            rows, cols = int(rng.integers(2, 6)), int(rng.integers(2, 6))
            weights = rng.uniform(0.1, 1.0, size=(rows, cols))
            weights /= weights.sum()
            base = rng.uniform(0.0, 5.0, size=(rows, cols))
            ratio = rng.uniform(0.1, 0.5)
            seq = [DoubleArray(base * ratio ** k, np.zeros(rows)) for k in range(60)]
            report = summable_order_null(seq, weights)
            assert report
            assert not np.any(report.limsup)

    def test_constant_sequence_is_not_order_null(self):
        ce = build_counterexample(4, 4, exact=True)
        weights = np.full((4, 4), 1 / 16)
        report = summable_order_null([ce.e] * 20, weights)
        assert not report
        assert not report.summable
        assert report.tail_bound == pytest.approx(2.5)
        assert report.limsup[:, 0].tolist() == [1.0] * 4

    @pytest.mark.parametrize("length", [10, 20])
    def test_short_geometric_prefix_is_order_null(self, length):
        seq = [DoubleArray(np.full((4, 4), 2.0 ** -n), np.zeros(4)) for n in range(1, length + 1)]
        report = summable_order_null(seq, np.full((4, 4), 1 / 16))
        assert report
        assert report.tail_start == length // 2
        assert not np.any(report.limsup)

    def test_moving_column_indicators_are_order_null(self):
        rows, cols = 4, 10
        m, n = np.meshgrid(np.arange(1, rows + 1), np.arange(1, cols + 1), indexing="ij")
        weights = 2.0 ** -(m + n)
        seq = []
        for col in range(cols):
            entries = np.zeros((rows, cols))
            entries[:, col] = 1.0
            seq.append(DoubleArray(entries, np.zeros(rows)))
        report = summable_order_null(seq, weights)
        assert report
        assert report.summable
        assert not np.any(report.limsup)

    def test_tail_schedule_arguments(self):
        seq = [DoubleArray([[2.0 ** -n]], [0.0]) for n in range(1, 11)]
        for bad in (0.0, 1.0):
            with pytest.raises(ArgumentError):
                summable_order_null(seq, [[1.0]], tail_fraction=bad)
        with pytest.raises(ArgumentError):
            summable_order_null(seq, [[1.0]], tail_start=10)
        assert not summable_order_null(seq, [[1.0]], tail_start=0)

    def test_budget(self):
        seq = [DoubleArray([[1.0]], [0.0]) * (0.5 ** k) for k in range(60)]
        assert not summable_order_null(seq, [[1.0]], budget=1.5)
        assert summable_order_null(seq, [[1.0]], budget=2.5)

    def test_weights_must_be_positive(self):
        from spanLattice.errors import DomainError

        with pytest.raises(DomainError):
            summable_order_null([DoubleArray([[1.0]], [0.0])], [[0.0]])

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spanLattice.errors import ArgumentError, DimensionError, DomainError
from spanLattice.lattice import (
    Payoff,
    StateSpace,
    band_projection_sup,
    band_projection_unit,
    format_number,
    in_span,
    independent_indices,
    is_component,
    lattice_ops,
    option_payoff,
    parse_number,
    rank,
    reduced_basis,
    solve_in_span,
    spans_equal,
    to_fraction,
)

N_STATES = 5
SPACE = StateSpace.uniform(N_STATES, exact=True)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
vectors = st.lists(rationals, min_size=N_STATES, max_size=N_STATES).map(
    lambda vals: Payoff(SPACE, vals, exact=True)
)
nonneg_vectors = st.lists(
    st.integers(min_value=0, max_value=6), min_size=N_STATES, max_size=N_STATES
).map(lambda vals: Payoff(SPACE, vals, exact=True))


class TestStateSpace:
    def test_uniform(self):
        space = StateSpace.uniform(4, exact=True)
        assert space.probs == (Fraction(1, 4),) * 4
        assert space.is_exact

    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(DomainError):
            StateSpace(n=2, probs=(0.5, 0.4))

    def test_probabilities_must_be_positive(self):
        with pytest.raises(DomainError):
            StateSpace(n=2, probs=(1.0, 0.0))

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            StateSpace(n=3, probs=(0.5, 0.5))

    def test_from_weights(self):
        space = StateSpace.from_weights([1, 3], exact=True)
        assert space.probs == (Fraction(1, 4), Fraction(3, 4))


class TestPayoff:
    def test_length_must_match_space(self, space3):
        with pytest.raises(DimensionError):
            Payoff(space3, [1, 2])

    def test_different_spaces(self, space3):
        other = StateSpace.uniform(2)
        with pytest.raises(DimensionError):
            Payoff(space3, [1, 2, 3]) + Payoff(other, [1, 2])

    def test_exactness_inference(self, exact_space4):
        assert Payoff(exact_space4, [Fraction(1, 2), 1, 0, 3]).is_exact
        assert not Payoff(exact_space4, [0.5, 1, 0, 3]).is_exact

    def test_values_are_read_only(self, space3):
        x = Payoff(space3, [1, 2, 3])
        with pytest.raises(ValueError):
            x.values[0] = 5.0

    def test_support_and_restrict(self, space3):
        x = Payoff(space3, [0, 2, -1])
        assert x.support() == (1, 2)
        assert x.restrict([1]).tolist() == [0.0, 2.0, 0.0]

    def test_ratio_is_zero_off_unit_support(self, space3):
        x = Payoff(space3, [2, 4, 6])
        u = Payoff(space3, [1, 2, 0])
        assert x.ratio(u).tolist() == [2.0, 2.0, 0.0]

    def test_expectation(self):
        space = StateSpace.from_weights([1, 1, 2], exact=True)
        x = Payoff(space, [4, 0, 2], exact=True)
        assert x.expectation() == Fraction(2)

    def test_mixed_arithmetic_promotes_to_float(self, exact_space4):
        a = Payoff(exact_space4, [1, 2, 3, 4], exact=True)
        b = Payoff(exact_space4, [0.5, 0.5, 0.5, 0.5])
        assert not (a + b).is_exact
        assert (a + b).tolist() == [1.5, 2.5, 3.5, 4.5]


class TestLatticeLaws:
    @given(vectors, vectors, vectors)
    def test_distributivity(self, x, y, z):
        assert (x & (y | z)).allclose((x & y) | (x & z))
        assert (x | (y & z)).allclose((x | y) & (x | z))

    @given(vectors)
    def test_positive_and_negative_parts(self, x):
        assert (x.pos_part() - x.neg_part()).allclose(x)
        assert (x.pos_part() + x.neg_part()).allclose(x.abs())
        assert (x.pos_part() & x.neg_part()).allclose(Payoff.zero(SPACE, exact=True))

    @given(vectors, vectors)
    def test_meet_join_sum(self, x, y):
        assert ((x & y) + (x | y)).allclose(x + y)

    @given(vectors)
    def test_abs_op_matches_abs(self, x):
        assert lattice_ops(x, op="abs").allclose(x.abs())

    @given(nonneg_vectors, rationals)
    def test_put_call_parity(self, f, k):
        call = option_payoff(f, k, "call")
        put = option_payoff(f, k, "put")
        assert (call - put).allclose(f - Payoff.constant(SPACE, k, exact=True))

    @given(nonneg_vectors, st.sets(st.integers(min_value=0, max_value=N_STATES - 1)))
    def test_indicator_multiples_are_components(self, u, states):
        x = u.restrict(states)
        assert is_component(x, u)
        assert is_component(u - x, u)

    @given(nonneg_vectors, nonneg_vectors)
    def test_band_projection_of_unit_is_component(self, x, u):
        p = band_projection_unit(x, u)
        assert is_component(p, u)
        assert p.dominated_by(u)
        assert p.restrict(x.support()).allclose(p)


class TestOperations:
    def test_lattice_ops_examples(self, space3):
        x = Payoff(space3, [1, 3, -2])
        y = Payoff(space3, [2, 0, 0])
        assert lattice_ops(x, y, op="meet").tolist() == [1.0, 0.0, -2.0]
        assert lattice_ops(x, y, op="join").tolist() == [2.0, 3.0, 0.0]
        assert lattice_ops(x, op="pos_part").tolist() == [1.0, 3.0, 0.0]
        assert lattice_ops(x, y, op="plus").tolist() == [3.0, 3.0, -2.0]
        assert lattice_ops(x, op="scale", scale=2).tolist() == [2.0, 6.0, -4.0]

    def test_lattice_ops_argument_errors(self, space3):
        x = Payoff(space3, [1, 2, 3])
        with pytest.raises(ArgumentError):
            lattice_ops(x, op="meet")
        with pytest.raises(ArgumentError):
            lattice_ops(x, op="scale")
        with pytest.raises(ArgumentError):
            lattice_ops(x, op="sqrt")

    def test_option_payoff(self, space3):
        f = Payoff(space3, [0, 1, 2])
        assert option_payoff(f, 1, "call").tolist() == [0.0, 0.0, 1.0]
        assert option_payoff(f, 1, "put").tolist() == [1.0, 0.0, 0.0]
        with pytest.raises(ArgumentError):
            option_payoff(f, 1, "straddle")

    def test_is_component(self, space3):
        u = Payoff(space3, [2, 1, 3])
        assert is_component(Payoff(space3, [2, 0, 3]), u)
        assert not is_component(Payoff(space3, [1, 0, 3]), u)
        with pytest.raises(DomainError):
            is_component(u, Payoff(space3, [1, -1, 1]))

    def test_band_projections_agree(self, space3):
        x = Payoff(space3, [0, 0.001, 5])
        u = Payoff(space3, [1, 2, 3])
        expected = [0.0, 2.0, 3.0]
        assert band_projection_unit(x, u).tolist() == expected
        assert band_projection_sup(x, u, iterations=4000).allclose(Payoff(space3, expected))

    def test_band_projection_requires_positive_inputs(self, space3):
        with pytest.raises(DomainError):
            band_projection_unit(Payoff(space3, [-1, 0, 1]), Payoff.one(space3))


class TestLinearAlgebra:
    def test_rank_exact_and_float(self, exact_space4):
        vecs = [
            Payoff(exact_space4, [1, 2, 3, 4], exact=True),
            Payoff(exact_space4, [2, 4, 6, 8], exact=True),
            Payoff(exact_space4, [0, 1, 0, 0], exact=True),
        ]
        assert rank(vecs) == 2
        assert rank([v.to_float() for v in vecs]) == 2
        assert independent_indices(vecs) == [0, 2]

    def test_solve_in_span_exact(self, exact_space4):
        a = Payoff(exact_space4, [1, 0, 1, 0], exact=True)
        b = Payoff(exact_space4, [0, 1, 0, 1], exact=True)
        target = a * Fraction(1, 3) + b * 2
        solution = solve_in_span([a, b], target)
        assert solution.member
        assert list(solution.coefficients) == [Fraction(1, 3), Fraction(2)]
        assert not in_span([a, b], Payoff(exact_space4, [1, 0, 0, 0], exact=True))

    def test_solve_in_span_float_residual(self, space3):
        a = Payoff(space3, [1, 1, 0])
        solution = solve_in_span([a], Payoff(space3, [1, 0, 0]))
        assert not solution.member
        assert solution.residual == pytest.approx(0.5)

    def test_reduced_basis_is_identity_on_pivots(self, space3):
        vecs = [Payoff(space3, [3, 2, 1]), Payoff(space3, [1, 1, 1])]
        reduced = reduced_basis(vecs)
        assert len(reduced) == 2
        assert spans_equal(reduced, vecs)
        exact = reduced_basis([v.to_exact() for v in vecs])
        assert [r.tolist() for r in exact] == [
            [Fraction(1), Fraction(0), Fraction(-1)],
            [Fraction(0), Fraction(1), Fraction(2)],
        ]


class TestNumbers:
    def test_to_fraction(self):
        assert to_fraction(0.1) == Fraction(1, 10)
        assert to_fraction("3/8") == Fraction(3, 8)
        assert to_fraction(4) == Fraction(4)

    def test_format_and_parse(self):
        assert format_number(Fraction(3, 4)) == "3/4"
        assert format_number(Fraction(2)) == "2"
        assert format_number(0.25) == "0.25"
        assert format_number(np.float64(1.5)) == "1.5"
        assert parse_number("3/4", exact=True) == Fraction(3, 4)
        assert parse_number("3/4") == 0.75

from fractions import Fraction

import numpy as np
import pytest

from spanLattice.errors import (
    ArgumentError,
    LimitedLiabilityError,
    MarketFormatError,
    SpanningError,
    UnknownGeneratorError,
)
from spanLattice.lattice import Payoff, StateSpace, in_span, spans_equal
from spanLattice.options import (
    Generator,
    Instrument,
    Portfolio,
    best_approximation,
    butterfly,
    lattice_closure_oracle,
    option_space_basis,
    random_lattice_expr,
    replicate,
    strike_grid,
    sublattice_membership,
)
from spanLattice.sigma import sigma_of


class TestInstruments:
    def test_instrument_payoff(self, space3):
        f = Payoff(space3, [0, 1, 2])
        assert Instrument("call", 1, f).payoff().tolist() == [0.0, 0.0, 1.0]
        assert Instrument("put", 1, f).label == "put@1.0"
        with pytest.raises(ArgumentError):
            Instrument("swap", 1, f)

    def test_portfolio_evaluate(self, space3):
        f = Payoff(space3, [0, 1, 2])
        p = Portfolio([(Instrument("call", 1, f), 2.0)], underlying=f)
        assert p.evaluate().tolist() == [0.0, 0.0, 2.0]
        assert Portfolio([], underlying=f).evaluate().tolist() == [0.0, 0.0, 0.0]

    def test_merged_aggregates_and_drops_zeros(self, space3):
        f = Payoff(space3, [0, 1, 2])
        p = Portfolio(
            [
                (Instrument("call", 1, f), 2.0),
                (Instrument("put", 0.5, f), 1.0),
                (Instrument("call", 1, f), -2.0),
                (Instrument("call", 0, f), 1.0),
            ]
        )
        merged = p.merged()
        assert [(i.kind, i.strike, w) for i, w in merged] == [("call", 0.0, 1.0), ("put", 0.5, 1.0)]
        assert merged.evaluate().allclose(p.evaluate())

    def test_save_and_load(self, tmp_path):
        space = StateSpace.uniform(3, exact=True)
        f = Payoff(space, [0, 1, 2], exact=True)
        p = Portfolio([(Instrument("call", Fraction(1, 2), f), Fraction(2, 3))], underlying=f)
        path = tmp_path / "p.json"
        p.save(path, underlying_name="f")
        loaded = Portfolio.load(path, space)
        assert loaded.is_exact
        assert loaded.evaluate().allclose(p.evaluate())
        assert path.read_text() == path.read_text().rstrip("\n") + "\n"

    def test_load_rejects_other_versions(self, space3):
        with pytest.raises(MarketFormatError):
            Portfolio.from_dict({"format_version": 2, "positions": []}, space3)


class TestOptionSpace:
    def test_strike_grid(self):
        assert strike_grid([0.0, 1.0, 2.0]) == [-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0]
        assert strike_grid([2.0], outer=False) == [2.0]

    @pytest.mark.parametrize(
        "values, dimension",
        [([0, 1, 2], 3), ([0, 1, 1, 4], 3), ([2, 2, 2], 1), ([0, 0, 5, 5], 2)],
    )
    def test_dimension_equals_number_of_values(self, values, dimension):
        f = Payoff(StateSpace.uniform(len(values)), values)
        space = option_space_basis(f)
        assert space.dimension == dimension
        assert len(space.strikes) == len(space.kinds) == dimension

    def test_limited_liability(self, space3):
        with pytest.raises(LimitedLiabilityError):
            option_space_basis(Payoff(space3, [-1, 0, 1]))

    def test_option_space_equals_measurable_space(self, rng):
        for _ in range(500):
            n = int(rng.integers(1, 9))
            space = StateSpace.uniform(n)
            f = Payoff(space, rng.integers(0, 5, size=n))
            basis = option_space_basis(f).basis
            indicators = sigma_of([f]).indicators()
            assert len(basis) == len(indicators)
            assert spans_equal(basis, indicators)

    def test_option_space_is_a_sublattice(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 9))
            space = StateSpace.uniform(n, exact=True)
            f = Payoff(space, rng.integers(0, 5, size=n).tolist(), exact=True)
            basis = option_space_basis(f).basis

            def combination():
                coeffs = rng.integers(-3, 4, size=len(basis)).tolist()
                return sum((b * c for b, c in zip(basis[1:], coeffs[1:])), basis[0] * coeffs[0])

            x, y = combination(), combination()
            assert in_span(basis, x & y)
            assert in_span(basis, x | y)
            assert in_span(basis, x.pos_part())


class TestButterfly:
    def test_interior_and_endpoints(self, space3):
        f = Payoff(space3, [0, 1, 2])
        assert butterfly(f, 0).evaluate().tolist() == [1.0, 0.0, 0.0]
        assert butterfly(f, 1).evaluate().tolist() == [0.0, 1.0, 0.0]
        assert butterfly(f, 2).evaluate().tolist() == [0.0, 0.0, 1.0]
        assert len(butterfly(f, 1)) == 3

    def test_constant_asset(self, space3):
        f = Payoff.constant(space3, 2.0)
        assert butterfly(f, 2).evaluate().tolist() == [1.0, 1.0, 1.0]

    def test_wings_use_the_nearest_gaps(self, exact_space4):
        f = Payoff(exact_space4, [0, 2, 8, 9], exact=True)
        strikes = {v: [inst.strike for inst, _ in butterfly(f, v)] for v in (0, 2, 8, 9)}
        assert strikes[2] == [1, 2, 3]
        assert strikes[8] == [Fraction(15, 2), 8, Fraction(17, 2)]
        assert strikes[0] == [1]
        assert strikes[9] == [Fraction(17, 2)]
        assert [inst.kind for inst, _ in butterfly(f, 0)] == ["put"]
        for i, v in enumerate((0, 2, 8, 9)):
            assert butterfly(f, v).evaluate().tolist() == [int(k == i) for k in range(4)]

    def test_unattained_value(self, space3):
        with pytest.raises(ArgumentError):
            butterfly(Payoff(space3, [0, 1, 2]), 0.5)


class TestReplicate:
    def test_injective_asset_replicates_every_claim(self, rng):
        worst = 0.0
        for _ in range(200):
            n = int(rng.integers(1, 13))
            space = StateSpace.uniform(n)
            f = Payoff(space, rng.choice(100, size=n, replace=False))
            for i in range(n):
                g = Payoff.indicator(space, [i])
                portfolio = replicate(g, f)
                worst = max(worst, float((portfolio.evaluate() - g).sup_norm()))
        assert worst <= 1e-9

    def test_exact_replication_has_zero_residual(self):
        space = StateSpace.uniform(4, exact=True)
        f = Payoff(space, [3, 0, 7, 1], exact=True)
        g = Payoff(space, [Fraction(1, 3), -2, 5, 0], exact=True)
        portfolio = replicate(g, f)
        assert portfolio.is_exact
        assert (portfolio.evaluate() - g).sup_norm() == 0

    def test_claim_on_level_sets(self):
        space = StateSpace.uniform(4)
        f = Payoff(space, [1, 1, 3, 0])
        g = Payoff(space, [4, 4, -1, 2])
        assert replicate(g, f).evaluate().allclose(g)

    def test_spanning_failure_carries_residual(self, space3):
        f = Payoff.constant(space3, 2.0)
        g = Payoff(space3, [0, 1, 2])
        with pytest.raises(SpanningError) as info:
            replicate(g, f)
        err = info.value
        assert err.block == (0, 1, 2)
        assert err.residual == pytest.approx(1.0)
        assert err.approximation.allclose(Payoff.constant(space3, 1.0))
        assert err.to_dict()["reason"] == "spanning"

    def test_best_approximation_of_replicable_claim(self, space3):
        f = Payoff(space3, [0, 0, 1])
        approximation, residual = best_approximation(Payoff(space3, [2, 2, 5]), f)
        assert residual <= 1e-9
        assert approximation.allclose(Payoff(space3, [2, 2, 5]), tol=1e-9)


class TestSublatticeMembership:
    def test_example(self):
        space = StateSpace.uniform(2)
        x, y = Payoff(space, [1, 0]), Payoff(space, [0, 1])
        membership = sublattice_membership(Payoff(space, [0, 3]), x, y)
        assert membership.member
        assert all(len(c) == 3 for c in membership.coefficients)

    def test_off_support_must_be_proportional_to_x(self, space3):
        x = Payoff(space3, [1, 2, 3])
        y = Payoff(space3, [1, 0, 0])
        assert sublattice_membership(Payoff(space3, [5, 4, 6]), x, y).member
        assert not sublattice_membership(Payoff(space3, [5, 4, 5]), x, y).member

    def test_agrees_with_closure_oracle(self, rng):
        disagreements = 0
        trials = 1200
        for t in range(trials):
            n = int(rng.integers(1, 7))
            space = StateSpace.uniform(n)
            x = Payoff(space, rng.integers(0, 6, size=n))
            y = Payoff(space, rng.integers(0, 6, size=n))
            if t % 3 == 0:
                z = Payoff(space, rng.integers(0, 6, size=n))
            else:
                expr = random_lattice_expr(rng, int(rng.integers(0, 4)), ("x", "y"))
                z = expr.evaluate({"x": x, "y": y})
            basis = lattice_closure_oracle([x, y])
            oracle_member = in_span(basis, z)
            if sublattice_membership(z, x, y).member != oracle_member:
                disagreements += 1
        assert disagreements == 0


class TestExpressions:
    def test_evaluation_and_generators(self, space3):
        u, v = Generator("u"), Generator("v")
        expr = (v - 0.5 * u).pos() & u
        assert expr.generators() == frozenset({"u", "v"})
        assert expr.depth == 5
        out = expr.evaluate({"u": Payoff(space3, [2, 2, 2]), "v": Payoff(space3, [0, 2, 5])})
        assert out.tolist() == [0.0, 1.0, 2.0]

    def test_unknown_generator(self, space3):
        with pytest.raises(UnknownGeneratorError):
            Generator("w").evaluate({"u": Payoff.one(space3)})

    def test_random_expression_depth(self, rng):
        for depth in range(5):
            assert random_lattice_expr(rng, depth).depth <= depth
        with pytest.raises(ArgumentError):
            random_lattice_expr(rng, -1)

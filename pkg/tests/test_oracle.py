import random
from fractions import Fraction
from itertools import product

import pytest

from capgames import goldmines, oracle
from capgames.errors import HypothesisViolation, OutOfRange, ScaleLimitExceeded
from capgames.goldmines import GameParams
from capgames.oracle import (
    PayoffTable,
    enumerate_pure_equilibria,
    enumerate_strategies,
    verify_closed_form,
    verify_strict_ne_coverage,
)
from tests._support import all_strategies, is_equilibrium_by_sweep, segments_of

F = Fraction


def gm(scale, ca, cb, rho=F(1, 2), mu=F(-3, 4)):
    return GameParams(scale, rho, mu, ca, cb)


class TestEnumeration:
    def test_cap_at_board_size_yields_every_strategy(self):
        assert enumerate_strategies(1, 4) == all_strategies(1)
        assert len(enumerate_strategies(2, 8)) == 2**8

    def test_lexicographic_order(self):
        out = enumerate_strategies(1, 2)
        assert out == sorted(out)
        assert out[0] == (0, 0, 0, 0)

    def test_strict_spaces_partition_the_loose_one(self):
        for cap in range(1, 9):
            loose = enumerate_strategies(2, cap)
            layered = [
                f for c in range(1, cap + 1) for f in enumerate_strategies(2, c, strict=True)
            ]
            assert sorted(layered) == loose
            assert all(segments_of(f) == cap for f in enumerate_strategies(2, cap, strict=True))

    def test_bounds(self):
        with pytest.raises(ScaleLimitExceeded):
            enumerate_strategies(4, 1)
        assert enumerate_strategies(4, 1, max_scale=4)[0] == (0,) * 16
        with pytest.raises(OutOfRange):
            enumerate_strategies(1, 0)
        with pytest.raises(OutOfRange):
            enumerate_strategies(0, 1)


class TestPayoffTable:
    def test_every_entry_matches_the_direct_rule_on_the_unit_board(self):
        p = gm(1, 4, 4)
        table = PayoffTable(1, p.rho, p.mu)
        for a, fa in enumerate(table.strategies):
            for b, fb in enumerate(table.strategies):
                assert table.payoff_pair(a, b) == goldmines.payoff(fa, fb, p)

    def test_sampled_entries_match_on_the_two_block_board(self):
        p = gm(2, 8, 8, F(3, 5), F(-7, 10))
        table = PayoffTable(2, p.rho, p.mu)
        rng = random.Random(2718)
        n = len(table.strategies)
        for _ in range(500):
            a, b = rng.randrange(n), rng.randrange(n)
            assert table.payoff_pair(a, b) == goldmines.payoff(
                table.strategies[a], table.strategies[b], p)

    def test_segment_counts_and_denominator(self):
        table = PayoffTable(1, F(1, 2), F(-3, 4))
        assert table.denominator == 4
        for idx, f in enumerate(table.strategies):
            assert table.segments[idx] == segments_of(f)

    def test_capability_masks(self):
        table = PayoffTable(1, F(1, 2), F(-3, 4))
        loose = table.indices_with_cap(2, strict=False)
        assert all(segments_of(table.strategies[i]) <= 2 for i in loose)
        exact = table.indices_with_cap(2, strict=True)
        assert all(segments_of(table.strategies[i]) == 2 for i in exact)
        assert len(exact) < len(loose)


class TestEquilibriumSweep:
    @pytest.mark.parametrize("ca,cb", [(1, 1), (2, 1), (2, 2), (3, 2), (4, 4)])
    def test_matches_an_independent_deviation_sweep(self, ca, cb):
        rho, mu = F(1, 2), F(-3, 4)
        space_a = [f for f in all_strategies(1) if segments_of(f) <= ca]
        space_b = [f for f in all_strategies(1) if segments_of(f) <= cb]
        expected = [
            (fa, fb)
            for fa, fb in product(space_a, space_b)
            if is_equilibrium_by_sweep(fa, fb, space_a, space_b, rho, mu)
        ]
        assert enumerate_pure_equilibria(gm(1, ca, cb)) == expected

    @pytest.mark.parametrize("ca,cb", [(2, 2), (3, 2), (4, 4)])
    def test_strict_spaces_match_sweep(self, ca, cb):
        rho, mu = F(1, 2), F(-3, 4)
        space_a = [f for f in all_strategies(1) if segments_of(f) == ca]
        space_b = [f for f in all_strategies(1) if segments_of(f) == cb]
        expected = [
            (fa, fb)
            for fa, fb in product(space_a, space_b)
            if is_equilibrium_by_sweep(fa, fb, space_a, space_b, rho, mu)
        ]
        assert enumerate_pure_equilibria(gm(1, ca, cb), strict=True) == expected

    def test_strict_spaces_change_the_answer(self):
        # With both budgets at the full four segments, the exact-count space
        # holds only the two alternating strategies; the perfect-cover pair
        # that dominates the at-most space is unreachable there.
        loose = enumerate_pure_equilibria(gm(1, 4, 4))
        strict = enumerate_pure_equilibria(gm(1, 4, 4), strict=True)
        assert loose == [((1, 0, 0, 1), (1, 0, 0, 1))]
        assert strict == [
            ((0, 1, 0, 1), (1, 0, 1, 0)),
            ((1, 0, 1, 0), (0, 1, 0, 1)),
        ]

    def test_scale_guard_and_override(self):
        with pytest.raises(ScaleLimitExceeded):
            enumerate_pure_equilibria(gm(4, 1, 1))
        with pytest.raises(ScaleLimitExceeded):
            enumerate_pure_equilibria(gm(2, 1, 1), max_scale=1)


class TestVerification:
    def test_report_matches_on_the_unit_board(self):
        report = verify_closed_form(gm(1, 1, 1))
        assert report.match
        assert report.predicted == report.observed == {(F(1, 4), F(1, 4))}
        assert report.counterexamples == ()
        assert report.equilibria_found >= 1

    def test_report_counts_every_equilibrium(self):
        p = gm(1, 2, 2)
        report = verify_closed_form(p)
        assert report.equilibria_found == len(enumerate_pure_equilibria(p))
        assert report.match

    def test_json_round_trip_shape(self):
        d = verify_closed_form(gm(1, 3, 1)).to_json_dict()
        assert d == {
            "scale": 1,
            "rho": "1/2",
            "mu": "-3/4",
            "cap_a": 3,
            "cap_b": 1,
            "predicted": [["3/2", "-1/4"]],
            "observed": [["3/2", "-1/4"]],
            "equilibria_found": d["equilibria_found"],
            "match": True,
            "counterexamples": [],
        }
        assert isinstance(d["equilibria_found"], int)

    def test_regime_guard(self):
        with pytest.raises(HypothesisViolation):
            verify_closed_form(gm(1, 1, 1, F(1, 2), F(-2, 5)))

    def test_scale_guard(self):
        with pytest.raises(ScaleLimitExceeded):
            verify_closed_form(gm(4, 1, 1))


class TestStrictCoverage:
    def test_holds_on_the_unit_board(self):
        for ca, cb in product(range(1, 4), repeat=2):
            assert verify_strict_ne_coverage(gm(1, ca, cb))

    def test_runs_outside_the_closed_form_regime(self):
        # Not a claim about the answer, only that the check is well-defined.
        verdict = verify_strict_ne_coverage(gm(1, 2, 2, F(1, 2), F(-2, 5)))
        assert isinstance(verdict, bool)

    def test_scale_guard(self):
        with pytest.raises(ScaleLimitExceeded):
            verify_strict_ne_coverage(gm(4, 1, 1))

"""Comparative-statics tests: stochastic orders, capacity profiles, and the
lattice property suites, all quantified over full optimum sets."""

import numpy as np
import pytest

from coarse_bounds.acts import ValueLadder
from coarse_bounds.engine import siminf
from coarse_bounds.errors import AlignmentError, PreconditionError
from coarse_bounds.statics import (
    capacity_profile,
    fosd_leq,
    increasing_differences_holds,
    mlr_cutoff_monotonicity,
    mlr_shift,
    nested_marginal_returns,
    optimum_set,
    restricted_value,
    sandwich_check,
    sosd_strict,
    sso_monotone_in_interval,
    submodular_delta_holds,
    submodularity_gap,
    supermodular_coarse_holds,
    weakly_sandwiched,
)

from util import dyadic_ladder

UNIFORM4 = ValueLadder([1.0, 2.0, 3.0, 4.0], [0.25] * 4)
UNIFORM8 = ValueLadder([float(i) for i in range(1, 9)], [0.125] * 8)


class TestFosd:
    def test_self(self):
        assert fosd_leq(UNIFORM4, UNIFORM4)

    def test_point_masses(self):
        assert fosd_leq(((1.0,), (1.0,)), ((0.0,), (1.0,)))
        assert not fosd_leq(((0.0,), (1.0,)), ((1.0,), (1.0,)))

    def test_crossing_cdfs(self):
        p = ((0.0, 3.0), (0.5, 0.5))
        q = ((1.0, 2.0), (0.5, 0.5))
        assert not fosd_leq(p, q) or not fosd_leq(q, p)
        assert not (fosd_leq(p, q) and fosd_leq(q, p))


class TestSosd:
    def test_not_strict_against_self(self):
        samples = [0.0, 1.0, -1.0, 0.5]
        assert not sosd_strict(samples, samples)

    def test_point_mass_dominates_mean_preserving_spread(self):
        assert sosd_strict([0.0, 0.0], [-1.0, 1.0])
        assert not sosd_strict([-1.0, 1.0], [0.0, 0.0])

    def test_unequal_means_rejected(self):
        assert not sosd_strict([1.0, 1.0], [-1.0, 1.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            sosd_strict([], [0.0])


class TestMlrShift:
    def test_identity_weights(self):
        shift = mlr_shift((0.2, 0.3, 0.5), (1.0, 1.0, 1.0))
        assert shift.shifted == (0.2, 0.3, 0.5)

    def test_exponential_tilt_valid_and_fosd(self):
        masses = (0.25, 0.25, 0.25, 0.25)
        weights = tuple(np.exp(0.8 * np.arange(4)).tolist())
        shift = mlr_shift(masses, weights)
        assert abs(sum(shift.shifted) - 1.0) < 1e-12
        support = (1.0, 2.0, 3.0, 4.0)
        assert fosd_leq((support, shift.shifted), (support, masses))

    def test_invalid_weights(self):
        with pytest.raises(ValueError):
            mlr_shift((0.5, 0.5), (1.0, 0.5))
        with pytest.raises(ValueError):
            mlr_shift((0.5, 0.5), (0.0, 1.0))
        with pytest.raises(AlignmentError):
            mlr_shift((0.5, 0.5), (1.0,))


class TestCapacityProfile:
    def test_uniform4_lower(self):
        prof = capacity_profile(UNIFORM4, 4, "lower")
        assert prof.values == (1.0, 2.0, 2.25, 2.5)
        assert prof.monotone and prof.concave
        assert prof.increments() == (1.0, 0.25, 0.25)

    def test_constant_ladder_flat(self):
        lad = ValueLadder([5.0], [1.0])
        prof = capacity_profile(lad, 3, "lower")
        assert prof.values == (5.0, 5.0, 5.0)
        assert prof.monotone and prof.concave

    def test_reaches_expectation(self):
        prof = capacity_profile(UNIFORM4, 6, "lower")
        assert prof.values[3] == pytest.approx(2.5, abs=0)
        assert prof.values[5] == prof.values[3]

    def test_upper_kind_flags(self):
        prof = capacity_profile(UNIFORM4, 4, "upper")
        assert prof.values == (4.0, 3.0, 2.75, 2.5)
        assert prof.monotone and prof.concave

    def test_rows(self):
        rows = capacity_profile(UNIFORM4, 3, "lower").rows()
        assert rows == [(1, 1.0, None), (2, 2.0, 1.0), (3, 2.25, 0.25)]


class TestSubmodularity:
    def test_wider_interval_gains_more(self):
        # splitting gains more on a wider interval
        assert submodularity_gap(UNIFORM4, (0, 3), 2, "lower") >= submodularity_gap(
            UNIFORM4, (1, 3), 2, "lower"
        )

    def test_random_nested(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            lad = dyadic_ladder(rng, max_levels=12)
            if len(lad) < 3:
                continue
            lo_o = int(rng.integers(0, len(lad) - 2))
            hi_o = int(rng.integers(lo_o + 2, len(lad)))
            lo_i = int(rng.integers(lo_o, hi_o - 1))
            hi_i = int(rng.integers(lo_i + 1, hi_o + 1))
            split = int(rng.integers(lo_i + 1, hi_i + 1))
            assert submodular_delta_holds(lad, (lo_o, hi_o), (lo_i, hi_i), split)
            if (lo_o, hi_o) != (lo_i, hi_i):
                assert submodularity_gap(lad, (lo_o, hi_o), split, "lower") > (
                    submodularity_gap(lad, (lo_i, hi_i), split, "lower")
                )

    def test_split_must_be_interior(self):
        with pytest.raises(ValueError):
            submodularity_gap(UNIFORM4, (1, 3), 1, "lower")


class TestSupermodularCoarseValue:
    def test_random_pairs(self):
        rng = np.random.default_rng(13)
        for _ in range(500):
            lad = dyadic_ladder(rng, max_levels=12)
            if len(lad) < 4:
                continue
            k = int(rng.integers(1, min(4, len(lad) - 1) + 1))
            pool = np.arange(1, len(lad))
            a = tuple(sorted(rng.choice(pool, size=k, replace=False).tolist()))
            b = tuple(sorted(rng.choice(pool, size=k, replace=False).tolist()))
            assert supermodular_coarse_holds(lad, a, b, "lower")
            assert supermodular_coarse_holds(lad, a, b, "upper")


class TestSandwich:
    def test_vacuous_when_exact(self):
        assert sandwich_check(UNIFORM4, 4)
        assert sandwich_check(UNIFORM4, 9)

    def test_uniform4(self):
        assert sandwich_check(UNIFORM4, 2)

    def test_weakly_sandwiched_helper(self):
        assert weakly_sandwiched((2,), (1, 3))
        assert weakly_sandwiched((2,), (2, 3))
        assert not weakly_sandwiched((2,), (3, 4))
        with pytest.raises(AlignmentError):
            weakly_sandwiched((2,), (1, 2, 3))

    def test_random_suite(self):
        rng = np.random.default_rng(14)
        for _ in range(500):
            lad = dyadic_ladder(rng, max_levels=12)
            n = int(rng.integers(1, 5))
            assert sandwich_check(lad, n)
            assert sandwich_check(lad, n, "upper")


class TestStrongSetOrder:
    def test_identical_intervals(self):
        assert sso_monotone_in_interval(UNIFORM8, 3, (0, 5), (0, 5))

    def test_shifted_intervals_uniform8(self):
        assert sso_monotone_in_interval(UNIFORM8, 3, (0, 5), (2, 7))

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            sso_monotone_in_interval(UNIFORM8, 3, (2, 7), (0, 5))

    def test_random_pairs(self):
        rng = np.random.default_rng(15)
        checked = 0
        while checked < 300:
            lad = dyadic_ladder(rng, max_levels=12)
            n = int(rng.integers(2, 5))
            if len(lad) < n + 2:
                continue
            span = int(rng.integers(n, len(lad)))
            lo1 = int(rng.integers(0, len(lad) - span + 1))
            lo2 = int(rng.integers(lo1, len(lad) - span + 1))
            checked += 1
            assert sso_monotone_in_interval(
                lad, n, (lo1, lo1 + span - 1), (lo2, lo2 + span - 1)
            )


class TestNestedMarginalReturns:
    def test_equal_intervals(self):
        assert nested_marginal_returns(UNIFORM8, 3, (0, 7), (0, 7))

    def test_middle_half_of_uniform8(self):
        assert nested_marginal_returns(UNIFORM8, 3, (2, 5), (0, 7))

    def test_not_nested_raises(self):
        with pytest.raises(PreconditionError):
            nested_marginal_returns(UNIFORM8, 3, (0, 7), (2, 5))

    def test_random_filtered(self):
        rng = np.random.default_rng(16)
        checked = 0
        attempts = 0
        while checked < 300 and attempts < 6000:
            attempts += 1
            lad = dyadic_ladder(rng, max_levels=12)
            n = int(rng.integers(2, 5))
            if len(lad) < n + 3:
                continue
            lo_s = int(rng.integers(0, 3))
            hi_s = int(rng.integers(len(lad) - 3, len(lad)))
            inner_lo = int(rng.integers(lo_s, lo_s + 2))
            inner_hi = int(rng.integers(hi_s - 1, hi_s + 1))
            if inner_hi - inner_lo + 1 < n + 1 or hi_s - lo_s + 1 < n + 1:
                continue
            try:
                ok = nested_marginal_returns(lad, n, (inner_lo, inner_hi), (lo_s, hi_s))
            except PreconditionError:
                continue
            checked += 1
            assert ok
        assert checked == 300


class TestMlrCutoffMonotonicity:
    def test_identity_shift(self):
        shift = mlr_shift(UNIFORM8.level_masses, (1.0,) * 8)
        assert mlr_cutoff_monotonicity(UNIFORM8, shift, 3)

    def test_exponential_tilt_uniform8(self):
        weights = tuple(np.exp(0.7 * np.arange(8)).tolist())
        shift = mlr_shift(UNIFORM8.level_masses, weights)
        assert mlr_cutoff_monotonicity(UNIFORM8, shift, 3)

    def test_random_suite(self):
        rng = np.random.default_rng(17)
        for _ in range(300):
            lad = dyadic_ladder(rng, max_levels=12)
            n = int(rng.integers(1, 5))
            lam = float(rng.uniform(0.1, 1.5))
            shift = mlr_shift(lad.level_masses, np.exp(lam * np.arange(len(lad))).tolist())
            assert mlr_cutoff_monotonicity(lad, shift, n)


class TestIncreasingDifferences:
    def test_random_cut_pairs(self):
        rng = np.random.default_rng(18)
        for _ in range(300):
            lad = dyadic_ladder(rng, max_levels=12)
            if len(lad) < 5:
                continue
            hi_big = len(lad) - 1
            hi_small = int(rng.integers(3, hi_big + 1))
            k = int(rng.integers(1, 3))
            if hi_small < k + 1:
                continue
            pool = np.arange(1, hi_small + 1)
            a = tuple(sorted(rng.choice(pool, size=k, replace=False).tolist()))
            b = tuple(sorted(rng.choice(pool, size=k, replace=False).tolist()))
            hi_c, lo_c = (a, b) if a[-1] >= b[-1] else (b, a)
            assert increasing_differences_holds(lad, 0, hi_small, hi_big, hi_c, lo_c)


class TestRestrictedProblems:
    def test_restricted_value_matches_full_when_whole(self):
        assert restricted_value(UNIFORM8, 3, "lower", (0, 7)) == siminf(UNIFORM8, 3).value

    def test_optimum_set_guard_and_contents(self):
        opt = optimum_set(UNIFORM4, 2, "lower")
        assert opt == ((2,),)
        opt3 = optimum_set(UNIFORM4, 3, "lower")
        assert opt3 == ((1, 2), (1, 3), (2, 3))

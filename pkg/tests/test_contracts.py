"""Contracting tests: best responses, contract simplification for cautious
agents, and the bait construction against reckless agents."""

import numpy as np
import pytest

from coarse_bounds.errors import InfeasibleConstructionError, PreconditionError
from coarse_bounds.applications.contracts import (
    ContractingProblem,
    agent_value,
    bait_feasibility_bound,
    best_response_effort,
    principal_value,
    reckless_bait,
    simplify_contract,
)


def make_problem(n_outputs=20, mid_cost=0.18, high_cost=0.42):
    outputs = np.linspace(0.5, 4.0, n_outputs)

    def tilt(lam):
        w = np.exp(lam * np.linspace(0.0, 1.0, n_outputs))
        return tuple((w / w.sum()).tolist())

    costs = {"low": 0.0, "mid": mid_cost, "high": high_cost}
    return ContractingProblem(
        outputs=tuple(outputs.tolist()),
        efforts=("low", "mid", "high"),
        output_masses=(tilt(-1.0), tilt(0.8), tilt(2.0)),
        agent_utility=lambda wage, effort: float(np.sqrt(max(wage, 1e-12))) - costs[effort],
        principal_utility=lambda output, wage: output - wage,
        wage_grid=tuple(np.linspace(0.05, 3.0, 60).tolist()),
    )


PROBLEM = make_problem()


class TestBestResponse:
    def test_single_effort(self):
        prob = ContractingProblem(
            outputs=(1.0, 2.0), efforts=("only",), output_masses=((0.5, 0.5),),
            agent_utility=lambda w, e: w, principal_utility=lambda o, w: o - w,
            wage_grid=(0.1, 0.5),
        )
        assert best_response_effort(prob, (0.1, 0.5), "cautious", 2) == "only"

    def test_constant_wage_picks_cheapest_effort(self):
        schedule = [1.0] * 20
        assert best_response_effort(PROBLEM, schedule, "cautious", 3) == "low"

    def test_three_effort_fixture_hand_solved(self):
        schedule = np.linspace(0.1, 2.8, 20).tolist()
        scores = {
            e: agent_value(PROBLEM, schedule, e, 3, "cautious")
            for e in PROBLEM.efforts
        }
        assert best_response_effort(PROBLEM, schedule, "cautious", 3) == max(
            scores, key=scores.get
        )

    def test_tie_break_prefers_principal(self):
        # flat wages make all efforts equal for the agent up to costs; with
        # zero costs everywhere the principal's preferred effort wins
        prob = make_problem(mid_cost=0.0, high_cost=0.0)
        schedule = [1.0] * 20
        choice = best_response_effort(prob, schedule, "cautious", 3)
        payoffs = {e: principal_value(prob, schedule, e) for e in prob.efforts}
        assert choice == max(payoffs, key=payoffs.get)


class TestSimplify:
    def test_already_simple_schedule_is_fixed_point(self):
        schedule = [0.5] * 10 + [1.5] * 10
        result = simplify_contract(PROBLEM, schedule, 2)
        assert result.schedule == tuple(schedule)
        assert result.effort_unchanged
        assert result.agent_value_gap == 0.0

    def test_three_clause_verification_random(self):
        rng = np.random.default_rng(19)
        for _ in range(60):
            schedule = np.sort(rng.choice(PROBLEM.wage_grid, size=20)).tolist()
            n = int(rng.integers(2, 5))
            result = simplify_contract(PROBLEM, schedule, n)
            assert result.effort_unchanged
            assert result.agent_value_gap <= 1e-12
            assert result.principal_pointwise_ok
            assert len(set(result.schedule)) <= n
            assert result.dominance_violations == ()

    def test_strict_principal_gain_exists(self):
        rng = np.random.default_rng(23)
        found = False
        for _ in range(40):
            schedule = np.sort(rng.choice(PROBLEM.wage_grid, size=20)).tolist()
            result = simplify_contract(PROBLEM, schedule, 3)
            effort = result.induced_effort
            if principal_value(PROBLEM, result.schedule, effort) > principal_value(
                PROBLEM, schedule, effort
            ) + 1e-9:
                found = True
                break
        assert found

    def test_non_invertible_utility_rejected(self):
        prob = ContractingProblem(
            outputs=(1.0, 2.0, 3.0), efforts=("e",), output_masses=((0.3, 0.3, 0.4),),
            agent_utility=lambda w, e: min(w, 1.0), principal_utility=lambda o, w: o - w,
            wage_grid=(0.2, 0.8),
        )
        with pytest.raises((PreconditionError, ValueError)):
            simplify_contract(prob, (1.5, 2.0, 2.5), 2)


class TestRecklessBait:
    PROB30 = make_problem(n_outputs=30)

    def strictly_increasing_schedule(self, rng):
        base = np.sort(rng.uniform(0.1, 2.5, size=30))
        return (base + np.linspace(0.0, 0.3, 30)).tolist()

    def test_zero_delta_identity(self):
        rng = np.random.default_rng(29)
        schedule = self.strictly_increasing_schedule(rng)
        res = reckless_bait(self.PROB30, schedule, 3, epsilon=0.05, delta=0.0)
        assert res.schedule == tuple(schedule)
        assert res.effort_unchanged

    def test_half_feasibility_bound_passes_all_clauses(self):
        rng = np.random.default_rng(31)
        done = 0
        for _ in range(25):
            schedule = self.strictly_increasing_schedule(rng)
            n = int(rng.integers(2, 5))
            try:
                bound_ = bait_feasibility_bound(self.PROB30, schedule, n, epsilon=0.05)
            except (InfeasibleConstructionError, PreconditionError):
                continue
            if bound_ <= 0:
                continue
            res = reckless_bait(self.PROB30, schedule, n, epsilon=0.05, delta=bound_ / 2)
            done += 1
            assert res.effort_unchanged
            assert res.perceived_value_gap <= 1e-12
            assert res.principal_gain > 0
            assert res.has_top_jump
            assert max(res.schedule[:-1]) < res.schedule[-1]
        assert done >= 15

    def test_excessive_delta_rejected(self):
        rng = np.random.default_rng(37)
        schedule = self.strictly_increasing_schedule(rng)
        bound_ = bait_feasibility_bound(self.PROB30, schedule, 3, epsilon=0.05)
        with pytest.raises(InfeasibleConstructionError):
            reckless_bait(self.PROB30, schedule, 3, epsilon=0.05, delta=bound_ * 50)

    def test_monotonicity_required(self):
        schedule = [1.0] * 29 + [0.5]
        with pytest.raises(PreconditionError):
            reckless_bait(self.PROB30, schedule, 3, epsilon=0.05, delta=0.01)


class TestValidation:
    def test_decreasing_wage_utility_rejected(self):
        with pytest.raises(ValueError):
            ContractingProblem(
                outputs=(1.0, 2.0), efforts=("e",), output_masses=((0.5, 0.5),),
                agent_utility=lambda w, e: -w, principal_utility=lambda o, w: o - w,
                wage_grid=(0.1, 0.9),
            )

    def test_schedule_length_checked(self):
        with pytest.raises(ValueError):
            agent_value(PROBLEM, [1.0] * 3, "low", 2, "cautious")

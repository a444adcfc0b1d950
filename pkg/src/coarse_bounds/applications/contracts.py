"""Principal-agent contracting with capacity-limited agents.

The agent picks effort to maximize the perceived value of the wage schedule
under the effort's output distribution; the principal keeps output minus
wages. For a cautious agent any schedule can be replaced by its coarse
lower bound, re-expressed in wages: effort and agent value are unchanged
while the principal weakly gains at every output, so optimal contracts never
need more distinct wages than the agent's capacity. A reckless agent can
instead be exploited: wages strictly inside the top perceived block can be
shaved without moving the perceived upper bound, leaving a schedule with a
discrete jump at the top.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..acts import Belief, DiscreteAct, build_ladder
from ..engine import (
    attitude_kind,
    bound,
    pull_back,
    _dp_prefix_tables,
    _dp_solve,
    _prefix_masses,
)
from ..errors import InfeasibleConstructionError, PreconditionError


@dataclass(frozen=True)
class ContractingProblem:
    """Outputs, efforts with their output distributions, and both payoffs.

    ``agent_utility(wage, effort)`` must be increasing in the wage for every
    effort; ``principal_utility(output, wage)`` decreasing in the wage.
    """

    outputs: tuple
    efforts: tuple
    output_masses: tuple  # one mass vector per effort, aligned with outputs
    agent_utility: object
    principal_utility: object
    wage_grid: tuple

    def __post_init__(self):
        outputs = tuple(float(o) for o in self.outputs)
        object.__setattr__(self, "outputs", outputs)
        if any(b <= a for a, b in zip(outputs, outputs[1:])):
            raise ValueError("outputs must be strictly ascending")
        if len(self.output_masses) != len(self.efforts):
            raise ValueError("one output distribution per effort is required")
        for masses in self.output_masses:
            Belief(masses)
        wages = tuple(float(x) for x in self.wage_grid)
        object.__setattr__(self, "wage_grid", wages)
        if any(b <= a for a, b in zip(wages, wages[1:])):
            raise ValueError("wage grid must be strictly ascending")
        for effort in self.efforts:
            us = [self.agent_utility(x, effort) for x in wages]
            if any(b <= a for a, b in zip(us, us[1:])):
                raise ValueError("agent utility must be increasing in the wage")
        for output in outputs:
            vs = [self.principal_utility(output, x) for x in wages]
            if any(b > a for a, b in zip(vs, vs[1:])):
                raise ValueError("principal utility must be decreasing in the wage")

    def belief(self, effort) -> Belief:
        return Belief(self.output_masses[self.efforts.index(effort)])


def _check_schedule(problem: ContractingProblem, schedule) -> tuple:
    schedule = tuple(float(x) for x in schedule)
    if len(schedule) != len(problem.outputs):
        raise ValueError("schedule must assign a wage to every output")
    return schedule


def utility_act(problem: ContractingProblem, schedule, effort) -> DiscreteAct:
    schedule = _check_schedule(problem, schedule)
    return DiscreteAct(
        problem.outputs,
        [problem.agent_utility(wage, effort) for wage in schedule],
    )


def agent_value(problem: ContractingProblem, schedule, effort, n: int,
                attitude: str) -> float:
    act = utility_act(problem, schedule, effort)
    ladder = build_ladder(act, problem.belief(effort))
    return bound(ladder, n, attitude_kind(attitude)).value


def principal_value(problem: ContractingProblem, schedule, effort) -> float:
    schedule = _check_schedule(problem, schedule)
    masses = problem.belief(effort).masses
    return sum(
        m * problem.principal_utility(o, wage)
        for o, wage, m in zip(problem.outputs, schedule, masses)
    )


def best_response_effort(problem: ContractingProblem, schedule, attitude: str, n: int):
    """Effort maximizing perceived agent value; ties go to the principal's
    preferred effort, then to listing order."""
    scored = []
    for idx, effort in enumerate(problem.efforts):
        scored.append((agent_value(problem, schedule, effort, n, attitude), effort, idx))
    best_agent = max(s[0] for s in scored)
    tied = [s for s in scored if s[0] >= best_agent - 1e-12]
    tied.sort(key=lambda s: (-principal_value(problem, schedule, s[1]), s[2]))
    return tied[0][1]


@dataclass(frozen=True)
class SimplificationResult:
    schedule: tuple
    induced_effort: object
    effort_unchanged: bool
    agent_value_gap: float
    principal_pointwise_ok: bool
    dominance_violations: tuple


def simplify_contract(problem: ContractingProblem, schedule, n: int) -> SimplificationResult:
    """Replace a schedule by the wage image of its coarse lower bound.

    The cautious agent's induced effort and value are unchanged; the wage at
    every output weakly falls, so the principal is pointwise weakly better
    off. Wages are recovered by inverting the agent's utility on the wages
    actually present in the schedule (utility must be injective there).
    """
    schedule = _check_schedule(problem, schedule)
    effort = best_response_effort(problem, schedule, "cautious", n)
    act = utility_act(problem, schedule, effort)
    belief = problem.belief(effort)
    wage_of = {}
    for wage in schedule:
        u = problem.agent_utility(wage, effort)
        if u in wage_of and wage_of[u] != wage:
            raise PreconditionError(
                "agent utility is not injective on the schedule's wages"
            )
        wage_of[u] = wage
    res = bound(build_ladder(act, belief), n, "lower")
    pulled = pull_back(res, act, belief)
    new_schedule = tuple(wage_of[u] for u in pulled.act.values)
    new_effort = best_response_effort(problem, new_schedule, "cautious", n)
    gap = abs(
        agent_value(problem, new_schedule, new_effort, n, "cautious")
        - agent_value(problem, schedule, effort, n, "cautious")
    )
    pointwise = all(nw <= w for nw, w in zip(new_schedule, schedule))
    return SimplificationResult(
        schedule=new_schedule,
        induced_effort=new_effort,
        effort_unchanged=new_effort == effort,
        agent_value_gap=gap,
        principal_pointwise_ok=pointwise,
        dominance_violations=pulled.violations,
    )


def _top_block_start(problem: ContractingProblem, schedule, effort, n: int) -> float:
    """Output where the top block of the perceived upper bound begins, for
    the optimum-set selection with the largest last cutoff.

    Found without enumeration: the largest cutoff c whose prefix (solved at
    capacity n-1) plus the top cell [c..end] still attains the optimum.
    """
    act = utility_act(problem, schedule, effort)
    ladder = build_ladder(act, problem.belief(effort))
    if len(ladder) <= n:
        raise PreconditionError("schedule is already within the agent's capacity")
    levels, masses = ladder.levels, ladder.level_masses
    length = len(levels)
    best, _ = _dp_solve(levels, masses, n, upper=True)
    prefix = _dp_prefix_tables(levels, masses, n - 1, upper=True)
    pref = _prefix_masses(masses)
    top_cut = None
    for c in range(length - 1, 0, -1):
        cand = prefix[n - 1][c - 1] + levels[length - 1] * (pref[length] - pref[c])
        if np.isclose(cand, best, rtol=1e-12, atol=1e-12):
            top_cut = c
            break
    if top_cut is None:  # pragma: no cover - the optimum always decomposes
        raise PreconditionError("failed to locate the top perceived block")
    top_level = levels[top_cut]
    belief = problem.belief(effort)
    return min(
        o
        for o, u, m in zip(problem.outputs, act.values, belief.masses)
        if m > 0 and u >= top_level
    )


def bait_feasibility_bound(problem: ContractingProblem, schedule, n: int,
                           epsilon: float, refine_steps: int = 40) -> float:
    """Largest verified wage reduction on the bait region.

    Starts from the monotonicity bound (the wage gap at the region's left
    edge) and bisects down until every bait clause verifies; the perceived
    upper bound is constant in delta on the optimal partition while every
    competing partition only gets cheaper, so the feasible set is an
    interval at zero.
    """
    schedule = _check_schedule(problem, schedule)
    if any(b < a for a, b in zip(schedule, schedule[1:])):
        raise PreconditionError("schedule must be non-decreasing in output")
    effort = best_response_effort(problem, schedule, "reckless", n)
    t_start = _top_block_start(problem, schedule, effort, n)
    top = problem.outputs[-1]
    region = [
        i for i, o in enumerate(problem.outputs) if t_start < o < top - epsilon
    ]
    if not region:
        raise InfeasibleConstructionError(
            "bait region (top block interior below the cap) is empty"
        )
    first = region[0]
    mono = schedule[0] if first == 0 else schedule[first] - schedule[first - 1]
    if mono <= 0:
        raise InfeasibleConstructionError(
            "monotonicity binds immediately: no wage gap at the region edge"
        )

    def verifies(delta: float) -> bool:
        try:
            reckless_bait(problem, schedule, n, epsilon, delta)
        except (InfeasibleConstructionError, PreconditionError):
            return False
        return True

    if verifies(mono):
        return mono
    lo, hi = 0.0, mono
    for _ in range(refine_steps):
        mid = 0.5 * (lo + hi)
        if mid > 0 and verifies(mid):
            lo = mid
        else:
            hi = mid
    if lo <= 0:
        raise InfeasibleConstructionError(
            "no positive delta keeps the perceived bound and effort fixed"
        )
    return lo


@dataclass(frozen=True)
class BaitResult:
    schedule: tuple
    induced_effort: object
    effort_unchanged: bool
    perceived_value_gap: float
    principal_gain: float
    has_top_jump: bool
    region: tuple


def reckless_bait(problem: ContractingProblem, schedule, n: int, epsilon: float,
                  delta: float) -> BaitResult:
    """Shave ``delta`` off wages strictly inside the top perceived block,
    below an ``epsilon`` collar under the highest output.

    Verifies, rather than assumes, that the perceived upper-bound value and
    the induced effort are unchanged, that the schedule stays monotone, and
    that the principal strictly gains; raises naming the binding constraint
    otherwise. The modified schedule keeps a discrete jump at the top.
    """
    schedule = _check_schedule(problem, schedule)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if any(b < a for a, b in zip(schedule, schedule[1:])):
        raise PreconditionError("schedule must be non-decreasing in output")
    effort = best_response_effort(problem, schedule, "reckless", n)
    if delta == 0:
        return BaitResult(schedule, effort, True, 0.0, 0.0, False, ())
    t_start = _top_block_start(problem, schedule, effort, n)
    top = problem.outputs[-1]
    region = tuple(
        i for i, o in enumerate(problem.outputs) if t_start < o < top - epsilon
    )
    if not region:
        raise InfeasibleConstructionError("bait region is empty")
    modified = list(schedule)
    for i in region:
        modified[i] = schedule[i] - delta
    modified = tuple(modified)
    if any(b < a for a, b in zip(modified, modified[1:])):
        raise InfeasibleConstructionError("monotonicity binds: delta too large")
    before = agent_value(problem, schedule, effort, n, "reckless")
    after = agent_value(problem, modified, effort, n, "reckless")
    gap = abs(after - before)
    if gap > 1e-12:
        raise InfeasibleConstructionError(
            "perceived upper bound moved: delta too large"
        )
    new_effort = best_response_effort(problem, modified, "reckless", n)
    if new_effort != effort:
        raise InfeasibleConstructionError("induced effort changed")
    gain = principal_value(problem, modified, effort) - principal_value(
        problem, schedule, effort
    )
    if gain <= 0:
        raise InfeasibleConstructionError("bait region carries no probability mass")
    interior_max = max(modified[:-1])
    return BaitResult(
        schedule=modified,
        induced_effort=new_effort,
        effort_unchanged=True,
        perceived_value_gap=gap,
        principal_gain=gain,
        has_top_jump=interior_max < modified[-1],
        region=region,
    )

"""Valuation of piecewise-linear insurance plans by capacity-limited agents.

A plan charges a premium ``p`` and pays a fraction ``c`` of losses above the
deductible ``d``; an optional out-of-pocket cap ``m`` tops the consumer's
payment. Ex-post wealth is non-increasing in the realized loss, so the
bound problem lives on interval partitions of the loss line: blocks of the
lower bound evaluate at each block's highest loss. The operations below
compute plan values, finite-difference sensitivities, willingness to pay for
plan improvements, the weakly dominated low-deductible construction, and the
no-cutoff-at-the-kink property of optimal partitions.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, replace

import numpy as np

from ..acts import Belief, DiscreteAct, build_ladder
from ..engine import (
    attitude_kind,
    blocks_from_cuts,
    bound,
    _dp_prefix_tables,
    _dp_solve,
    _prefix_masses,
)
from ..errors import BracketingError, PreconditionError
from ..statics import optimum_set


@dataclass(frozen=True)
class InsuranceContract:
    """Premium, deductible, coverage rate, optional out-of-pocket cap, wealth."""

    premium: float
    deductible: float
    coverage: float
    cap: float | None
    wealth: float

    def __post_init__(self):
        if self.deductible < 0:
            raise ValueError("deductible must be non-negative")
        if not 0.0 <= self.coverage <= 1.0:
            raise ValueError("coverage rate must lie in [0, 1]")
        if self.cap is not None and self.cap < 0:
            raise ValueError("out-of-pocket cap must be non-negative")


@dataclass(frozen=True)
class LossModel:
    """Loss distribution on an ascending finite grid."""

    losses: tuple
    masses: tuple

    def __init__(self, losses, masses):
        losses = tuple(float(x) for x in losses)
        masses = tuple(float(m) for m in masses)
        if any(b <= a for a, b in zip(losses, losses[1:])):
            raise ValueError("loss grid must be strictly ascending")
        Belief(masses)  # validates masses
        object.__setattr__(self, "losses", losses)
        object.__setattr__(self, "masses", masses)

    def __len__(self):
        return len(self.losses)

    @property
    def belief(self) -> Belief:
        return Belief(self.masses)

    @property
    def max_loss(self) -> float:
        return self.losses[-1]

    @classmethod
    def from_density(cls, density, max_loss: float, n: int) -> "LossModel":
        """Midpoint discretization of a positive density on [0, max_loss]."""
        step = max_loss / n
        losses = [(i + 0.5) * step for i in range(n)]
        weights = [density(x) for x in losses]
        total = sum(weights)
        if total <= 0:
            raise ValueError("density must have positive mass on the grid")
        return cls(losses, [w / total for w in weights])

    @classmethod
    def uniform(cls, max_loss: float, n: int) -> "LossModel":
        return cls.from_density(lambda _x: 1.0, max_loss, n)

    def tilted(self, lam: float) -> "LossModel":
        """Exponential tilt exp(lam * loss): an MLR-upward shift for lam > 0."""
        w = np.exp(lam * np.asarray(self.losses))
        raw = w * np.asarray(self.masses)
        return LossModel(self.losses, (raw / raw.sum()).tolist())

    def grid_step(self) -> float:
        steps = np.diff(self.losses)
        return float(steps.min())


def consumer_payment(contract: InsuranceContract, loss: float) -> float:
    """Out-of-pocket payment at a realized loss, excluding the premium."""
    if loss < 0:
        raise ValueError("loss must be non-negative")
    d, c = contract.deductible, contract.coverage
    pay = loss if loss <= d else d + (1.0 - c) * (loss - d)
    if contract.cap is not None:
        pay = min(pay, contract.cap)
    return pay


def plan_act(contract: InsuranceContract, model: LossModel) -> DiscreteAct:
    """Ex-post wealth across the loss grid (wealth units; utility applied later)."""
    values = [
        contract.wealth - contract.premium - consumer_payment(contract, x)
        for x in model.losses
    ]
    return DiscreteAct(model.losses, values)


def utility_act(contract: InsuranceContract, model: LossModel, utility) -> DiscreteAct:
    wealth = plan_act(contract, model)
    return DiscreteAct(wealth.state_ids, [utility(x) for x in wealth.values])


def plan_value(contract: InsuranceContract, model: LossModel, utility, n: int,
               attitude: str = "cautious") -> float:
    """Perceived plan value: the capacity-``n`` bound of utility of wealth."""
    act = utility_act(contract, model, utility)
    ladder = build_ladder(act, model.belief)
    return bound(ladder, n, attitude_kind(attitude)).value


def expected_value(contract: InsuranceContract, model: LossModel, utility) -> float:
    act = utility_act(contract, model, utility)
    return sum(v * m for v, m in zip(act.values, model.masses))


def _with_parameter(contract: InsuranceContract, parameter: str, value: float) -> InsuranceContract:
    if parameter == "deductible":
        return replace(contract, deductible=value)
    if parameter == "coverage":
        return replace(contract, coverage=value)
    if parameter == "cap":
        if contract.cap is None:
            raise PreconditionError("contract has no out-of-pocket cap")
        return replace(contract, cap=value)
    raise ValueError(f"unknown parameter {parameter!r}")


def _parameter_value(contract: InsuranceContract, parameter: str) -> float:
    return {
        "deductible": contract.deductible,
        "coverage": contract.coverage,
        "cap": contract.cap,
    }[parameter]


def sensitivity(contract: InsuranceContract, model: LossModel, utility, n: int,
                parameter: str, h: float, attitude: str = "cautious",
                side: str = "central") -> float:
    """Finite-difference derivative of the plan value in one parameter.

    ``side="central"`` requires the parameter to be interior at step ``h``;
    one-sided differences are available at boundaries.
    """
    x0 = _parameter_value(contract, parameter)
    if x0 is None:
        raise PreconditionError("parameter is absent from the contract")
    val = lambda x: plan_value(
        _with_parameter(contract, parameter, x), model, utility, n, attitude
    )
    if side == "central":
        try:
            return (val(x0 + h) - val(x0 - h)) / (2.0 * h)
        except ValueError as err:
            raise PreconditionError(
                f"{parameter} at {x0} is not interior for step {h}"
            ) from err
    if side == "forward":
        return (val(x0 + h) - val(x0)) / h
    if side == "backward":
        return (val(x0) - val(x0 - h)) / h
    raise ValueError(f"unknown side {side!r}")


def wtp(contract: InsuranceContract, model: LossModel, utility, n: int,
        improvement: str, delta: float, attitude: str = "cautious",
        tol: float = 1e-8) -> float:
    """Premium increase making the agent indifferent to an improved plan.

    ``improvement`` is ``"lower_deductible"`` or ``"lower_cap"``; ``delta``
    is the reduction. Solved by bisection to ``tol``.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if improvement == "lower_deductible":
        improved = replace(contract, deductible=contract.deductible - delta)
    elif improvement == "lower_cap":
        if contract.cap is None:
            raise PreconditionError("contract has no out-of-pocket cap")
        improved = replace(contract, cap=contract.cap - delta)
    else:
        raise ValueError(f"unknown improvement {improvement!r}")
    base_value = plan_value(contract, model, utility, n, attitude)
    gain = lambda dp: plan_value(
        replace(improved, premium=improved.premium + dp), model, utility, n, attitude
    ) - base_value
    lo, hi = 0.0, max(delta, 1e-6)
    if gain(lo) < 0:
        raise BracketingError("improvement does not weakly raise the plan value")
    for _ in range(60):
        if gain(hi) < 0:
            break
        hi *= 2.0
        if hi > contract.wealth:
            raise BracketingError("no premium increase offsets the improvement")
    else:
        raise BracketingError("failed to bracket the willingness to pay")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gain(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def loss_block_cutoffs(contract: InsuranceContract, model: LossModel, utility,
                       cuts, n: int) -> tuple:
    """Interior loss-space cutoffs (each block's highest loss) induced by a
    cutoff vector over the wealth ladder."""
    act = utility_act(contract, model, utility)
    ladder = build_ladder(act, model.belief)
    level_losses: dict = {}
    value_of = dict(zip(act.state_ids, act.values))
    for x, m in zip(model.losses, model.masses):
        if m > 0:
            level_losses.setdefault(value_of[x], []).append(x)
    spans = []
    for blo, bhi in blocks_from_cuts(tuple(cuts), len(ladder)):
        losses = [
            x
            for lv in ladder.levels[blo : bhi + 1]
            for x in level_losses[lv]
        ]
        spans.append((min(losses), max(losses)))
    spans.sort()
    return tuple(hi for _, hi in spans[:-1])


def plan_cutoffs(contract: InsuranceContract, model: LossModel, utility, n: int,
                 attitude: str = "cautious") -> tuple:
    """Loss-space cutoffs of the canonical optimal bound."""
    act = utility_act(contract, model, utility)
    ladder = build_ladder(act, model.belief)
    res = bound(ladder, n, attitude_kind(attitude))
    return loss_block_cutoffs(contract, model, utility, res.cutoffs.cuts, n)


@dataclass(frozen=True)
class DominatedPairResult:
    low_contract: InsuranceContract
    indifferent: bool
    lowest_cutoff_ok: bool
    value_high: float
    value_low: float


def dominated_pair(base: InsuranceContract, target_deductible: float,
                   model: LossModel, utility, n: int,
                   tol: float = 1e-9) -> DominatedPairResult:
    """The weakly dominated low-deductible companion of a capless plan.

    Lowering the deductible from d' to d saves at most ``c (d' - d)`` in
    out-of-pocket payments, so charging exactly that much more makes the new
    plan weakly dominated (wealth coincides above d', is strictly lower
    below). A cautious capacity-``n`` agent is indifferent precisely when
    some optimal lower-bound partition of the base plan has its lowest
    cutoff at or above d'.
    """
    if base.cap is not None:
        raise PreconditionError("dominated-pair construction needs capless plans")
    d_hi = base.deductible
    if not 0 <= target_deductible < d_hi:
        raise ValueError("target deductible must lie below the base deductible")
    bump = base.coverage * (d_hi - target_deductible)
    low = replace(base, deductible=target_deductible, premium=base.premium + bump)
    v_hi = plan_value(base, model, utility, n, "cautious")
    v_lo = plan_value(low, model, utility, n, "cautious")
    return DominatedPairResult(
        low_contract=low,
        indifferent=abs(v_hi - v_lo) <= tol,
        lowest_cutoff_ok=_exists_selection_first_block_reaching(
            base, model, utility, n, d_hi
        ),
        value_high=v_hi,
        value_low=v_lo,
    )


def _exists_selection_first_block_reaching(contract, model, utility, n, loss_mark) -> bool:
    """True iff some optimal lower-bound partition puts every loss below
    ``loss_mark`` into its first loss block (lowest cutoff >= loss_mark)."""
    act = utility_act(contract, model, utility)
    ladder = build_ladder(act, model.belief)
    levels, masses = ladder.levels, ladder.level_masses
    length = len(levels)
    n_eff = min(n, length)
    if n_eff == 1:
        return True
    best, _ = _dp_solve(levels, masses, n_eff, upper=False)
    # the first loss block is the last ladder block; its lowest loss cutoff
    # reaches loss_mark iff the last ladder cut is at or below the level of
    # the first grid loss at or beyond loss_mark
    i = bisect_left(model.losses, loss_mark)
    while i < len(model.losses) and model.masses[i] == 0.0:
        i += 1
    if i >= len(model.losses):
        return False
    wealth_mark = utility(
        contract.wealth - contract.premium - consumer_payment(contract, model.losses[i])
    )
    j0 = levels.index(wealth_mark)
    if j0 < 1:
        return False
    prefix = _dp_prefix_tables(levels, masses, n_eff - 1, upper=False)
    pref = _prefix_masses(masses)
    feasible = max(
        prefix[n_eff - 1][c - 1] + levels[c] * (pref[length] - pref[c])
        for c in range(1, j0 + 1)
    )
    return bool(np.isclose(feasible, best, rtol=1e-12, atol=1e-12))


def has_kink(contract: InsuranceContract) -> bool:
    """Distinct payment slopes just below and above the deductible."""
    if contract.deductible <= 0:
        return False
    below = 1.0
    above = 1.0 - contract.coverage
    if contract.cap is not None and contract.cap <= contract.deductible:
        return False  # cap flattens the schedule before the deductible
    return below != above


def kink_avoidance(contract: InsuranceContract, model: LossModel, utility, n: int) -> bool:
    """No optimal cutoff sits at the deductible kink's grid point.

    The grid point nearest the deductible stands in for the kink state; with
    cutoffs living on the grid this is the within-one-grid-cell exclusion
    zone around the kink. Quantifies over the full optimum set (exhaustive
    oracle; instances must respect the oracle size guard). Vacuously true
    for kink-free plans.
    """
    if not has_kink(contract):
        return True
    act = utility_act(contract, model, utility)
    ladder = build_ladder(act, model.belief)
    d = contract.deductible
    kink_point = min(model.losses, key=lambda x: abs(x - d))
    for cuts in optimum_set(ladder, n, "lower"):
        if kink_point in loss_block_cutoffs(contract, model, utility, cuts, n):
            return False
    return True

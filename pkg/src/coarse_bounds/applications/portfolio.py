"""Two-period savings and portfolio choice with a capacity-limited agent.

The agent splits wealth between consumption, a safe asset, and a risky asset
whose return distribution lives on a finite grid. Continuation values use
the perceived (coarse-bound) valuation of the second-period utility act; the
unconstrained benchmark is the same code path with capacity equal to the
grid size.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from ..acts import Belief, DiscreteAct, build_ladder
from ..engine import attitude_kind, bound
from ..errors import ConvergenceError, PreconditionError
from .crra import CRRAUtility

NEG_INF = float("-inf")


@dataclass(frozen=True)
class PortfolioProblem:
    """Endowment, safe gross return, discretized risky return, and tastes."""

    endowment: float
    safe_return: float
    risky_returns: tuple
    risky_masses: tuple
    beta: float
    utility: CRRAUtility
    capacity: int
    attitude: str = "cautious"

    def __post_init__(self):
        returns = tuple(float(r) for r in self.risky_returns)
        object.__setattr__(self, "risky_returns", returns)
        object.__setattr__(self, "risky_masses", tuple(float(m) for m in self.risky_masses))
        Belief(self.risky_masses)
        if any(b <= a for a, b in zip(returns, returns[1:])):
            raise ValueError("risky returns must be strictly ascending")
        if not returns[0] < self.safe_return < returns[-1]:
            raise PreconditionError(
                "safe return must lie strictly inside the risky support"
            )
        if self.beta < 0:
            raise ValueError("discount factor must be non-negative")
        if self.endowment <= 0:
            raise ValueError("endowment must be positive")

    @property
    def grid_size(self) -> int:
        return len(self.risky_returns)

    def unconstrained(self) -> "PortfolioProblem":
        return replace(self, capacity=self.grid_size)


def perceived_return_value(problem: PortfolioProblem, payoff, capacity=None) -> float:
    """Perceived value of the act r -> payoff(r); -inf when any second-period
    wealth is non-positive."""
    n = problem.capacity if capacity is None else capacity
    values = []
    for r in problem.risky_returns:
        x = payoff(r)
        if x <= 0:
            return NEG_INF
        values.append(problem.utility(x))
    act = DiscreteAct(problem.risky_returns, values)
    ladder = build_ladder(act, Belief(problem.risky_masses))
    return bound(ladder, n, attitude_kind(problem.attitude)).value


def allocation_objective(problem: PortfolioProblem, x: float, alpha: float,
                         capacity=None) -> float:
    """Perceived second-period utility when fraction alpha of savings x is risky."""
    rb = problem.safe_return
    return perceived_return_value(
        problem, lambda r: (1.0 - alpha) * x * rb + alpha * x * r, capacity
    )


def solve_allocation(problem: PortfolioProblem, x: float, capacity=None,
                     grid_step: float = 1e-3, tol: float = 1e-6) -> float:
    """Optimal risky share in [0, 1] for fixed savings ``x``.

    Grid search at ``grid_step`` followed by golden-section refinement to
    ``tol``; ties resolve to the smallest share.
    """
    if x <= 0:
        raise ValueError("savings must be positive")
    obj = lambda a: allocation_objective(problem, x, a, capacity)
    grid = np.arange(0.0, 1.0 + 0.5 * grid_step, grid_step)
    grid[-1] = 1.0
    vals = [obj(a) for a in grid]
    i_best = int(np.argmax(vals))
    lo = grid[max(0, i_best - 1)]
    hi = grid[min(len(grid) - 1, i_best + 1)]
    refined = _golden_max(obj, lo, hi, tol)
    candidates = [(float(grid[i_best]), vals[i_best]), refined]
    best_val = max(v for _, v in candidates)
    return min(a for a, v in candidates if v >= best_val - 1e-15)


def _golden_max(obj, lo: float, hi: float, tol: float):
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = obj(c), obj(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = obj(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = obj(d)
    mid = 0.5 * (a + b)
    return mid, obj(mid)


def savings_objective(problem: PortfolioProblem, b: float, s: float,
                      capacity=None) -> float:
    """u(consumption) + beta * perceived utility of the portfolio payoff."""
    w, rb = problem.endowment, problem.safe_return
    cons = w - b - s
    if cons <= 0 or b < 0 or s < 0:
        return NEG_INF
    if problem.beta == 0.0:
        return problem.utility(cons)
    inner = perceived_return_value(problem, lambda r: rb * b + r * s, capacity)
    if inner == NEG_INF:
        return NEG_INF
    return problem.utility(cons) + problem.beta * inner


@dataclass(frozen=True)
class SavingsSolution:
    safe: float
    risky: float
    value: float
    boundary: bool
    kkt_residual: float

    @property
    def total(self) -> float:
        return self.safe + self.risky


def solve_savings(problem: PortfolioProblem, capacity=None,
                  restarts=((0.2, 0.2), (0.4, 0.1), (0.1, 0.4), (0.3, 0.3)),
                  tol: float = 1e-9) -> SavingsSolution:
    """Maximize the two-period objective over (safe, risky) holdings by
    direct search from several deterministic starting points."""
    w = problem.endowment
    neg = lambda z: -savings_objective(problem, z[0], z[1], capacity)
    best = None
    for frac_b, frac_s in restarts:
        start = np.array([frac_b * w, frac_s * w])
        res = minimize(
            neg, start, method="Nelder-Mead",
            options={"xatol": tol, "fatol": tol, "maxiter": 4000},
        )
        if best is None or res.fun < best.fun:
            best = res
    b, s = float(best.x[0]), float(best.x[1])
    b, s = max(b, 0.0), max(s, 0.0)
    value = savings_objective(problem, b, s, capacity)
    h = 1e-6 * max(1.0, w)
    grad = []
    for db, ds in ((h, 0.0), (0.0, h)):
        up = savings_objective(problem, b + db, s + ds, capacity)
        dn = savings_objective(problem, b - db, s - ds, capacity)
        if up == NEG_INF or dn == NEG_INF:
            grad.append(float("nan"))
        else:
            grad.append((up - dn) / (2.0 * h))
    boundary = b < 1e-7 or s < 1e-7 or (w - b - s) < 1e-7
    finite = [abs(g) for g in grad if not np.isnan(g)]
    residual = max(finite) if finite else float("nan")
    return SavingsSolution(safe=b, risky=s, value=value, boundary=boundary,
                           kkt_residual=residual)


def equilibrium_price(problem: PortfolioProblem, capacity=None,
                      h0: float = 1e-2, tol: float = 1e-7,
                      max_halvings: int = 40) -> float:
    """Zero-net-supply price of the risky asset.

    The safe-asset first-order condition pins the safe return at 1/beta, and
    the price equals the marginal perceived value of an infinitesimal risky
    position at the per-period endowment, in units of first-period marginal
    utility. Computed as a one-sided difference quotient with the step
    halved until successive estimates agree within ``tol``.
    """
    n = problem.capacity if capacity is None else capacity
    w, beta, u = problem.endowment, problem.beta, problem.utility
    if beta <= 0:
        raise PreconditionError("equilibrium pricing needs a positive discount factor")
    marg = u.marginal(w)

    def estimate(h: float) -> float:
        v = perceived_return_value(problem, lambda r: w + h * r, n)
        if v == NEG_INF:
            raise PreconditionError("endowment too small for the return grid")
        return beta * (v - u(w)) / (h * marg)

    h = h0
    prev = estimate(h)
    for _ in range(max_halvings):
        h *= 0.5
        cur = estimate(h)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise ConvergenceError("difference quotient failed to converge")

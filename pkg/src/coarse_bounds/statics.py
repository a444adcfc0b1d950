"""Stochastic orders and lattice properties of the coarse-bound problem.

The lower-bound cell function (block infimum times mass) is submodular on
intervals, which makes the coarse value supermodular in cutoff vectors and
yields the workhorse comparative statics: diminishing returns to capacity,
optimal cutoffs sandwiched across adjacent capacities, strong-set-order
monotonicity of optimum sets in the underlying interval, higher marginal
returns to capacity on wider intervals, and upward cutoff shifts under
monotone-likelihood-ratio improvements of the belief. Each check here
quantifies over the *full* optimum sets produced by the exhaustive oracle,
never the canonical selection alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .acts import ValueLadder
from .engine import (
    LOWER,
    UPPER,
    _check_kind,
    _coarse_raw,
    _dp_solve,
    _enumerate_raw,
    _prefix_masses,
)
from .errors import AlignmentError, PreconditionError


@dataclass(frozen=True)
class CapacityProfile:
    """Optimal bound values W(1..n_max) for a fixed ladder and kind."""

    kind: str
    values: tuple
    monotone: bool
    concave: bool

    def increments(self) -> tuple:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    def rows(self) -> list:
        """(N, W(N), increment) rows; the first increment is None."""
        out = []
        for i, v in enumerate(self.values):
            inc = None if i == 0 else v - self.values[i - 1]
            out.append((i + 1, v, inc))
        return out


@dataclass(frozen=True)
class DistributionShift:
    """A belief tilted by positive non-decreasing per-level weights."""

    base: tuple
    weights: tuple
    shifted: tuple


def _as_distribution(dist):
    """Extract (support, masses) from a ladder, perceived distribution, or pair."""
    if isinstance(dist, ValueLadder):
        return dist.levels, dist.level_masses
    if hasattr(dist, "support") and hasattr(dist, "masses"):
        return tuple(dist.support), tuple(dist.masses)
    support, masses = dist
    return tuple(support), tuple(masses)


def fosd_leq(p, q) -> bool:
    """True iff ``p`` first-order stochastically dominates ``q``: the cdf of
    ``q`` lies weakly above the cdf of ``p`` on the union of supports."""
    ps, pm = _as_distribution(p)
    qs, qm = _as_distribution(q)
    grid = sorted(set(ps) | set(qs))
    for x in grid:
        cdf_p = sum(m for v, m in zip(ps, pm) if v <= x)
        cdf_q = sum(m for v, m in zip(qs, qm) if v <= x)
        if cdf_q < cdf_p - 1e-12:
            return False
    return True


def integrated_cdf(samples, points) -> np.ndarray:
    """E[(x - S)^+] of the empirical distribution of ``samples`` at ``points``."""
    s = np.sort(np.asarray(samples, dtype=float))
    pts = np.asarray(points, dtype=float)
    cum = np.concatenate([[0.0], np.cumsum(s)])
    idx = np.searchsorted(s, pts, side="right")
    return (pts * idx - cum[idx]) / len(s)


def sosd_strict(f_samples, h_samples, *, gap_tol: float = 1e-6, mean_tol: float = 1e-6) -> bool:
    """True iff the first empirical distribution strictly second-order
    stochastically dominates the second.

    Checked through integrated cdfs on the merged support: the gap must never
    exceed ``gap_tol`` in the wrong direction, must exceed it somewhere in
    the right direction, and the means must agree within ``mean_tol``.
    """
    f = np.asarray(list(getattr(f_samples, "errors", f_samples)), dtype=float)
    h = np.asarray(list(getattr(h_samples, "errors", h_samples)), dtype=float)
    if f.size == 0 or h.size == 0:
        raise ValueError("distributions must be non-empty")
    if abs(f.mean() - h.mean()) > mean_tol:
        return False
    grid = np.unique(np.concatenate([f, h]))
    gap = integrated_cdf(f, grid) - integrated_cdf(h, grid)
    if np.any(gap > gap_tol):
        return False
    return bool(np.any(gap < -gap_tol))


def mlr_shift(masses, weights) -> DistributionShift:
    """Tilt ``masses`` by ``weights`` (positive, non-decreasing in the value
    order) and renormalize; the shifted belief dominates the base in the
    monotone likelihood ratio order."""
    masses = tuple(float(m) for m in masses)
    weights = tuple(float(w) for w in weights)
    if len(masses) != len(weights):
        raise AlignmentError("weights must align with masses")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be strictly positive")
    if any(b < a for a, b in zip(weights, weights[1:])):
        raise ValueError("weights must be non-decreasing in the value order")
    raw = [m * w for m, w in zip(masses, weights)]
    total = sum(raw)
    return DistributionShift(masses, weights, tuple(r / total for r in raw))


def capacity_profile(ladder: ValueLadder, n_max: int, kind: str) -> CapacityProfile:
    """W(N) for N = 1..n_max, with monotonicity and concavity flags."""
    upper = _check_kind(kind)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    values = tuple(
        _dp_solve(ladder.levels, ladder.level_masses, n, upper)[0]
        for n in range(1, n_max + 1)
    )
    inc = [b - a for a, b in zip(values, values[1:])]
    if upper:
        monotone = all(d <= 1e-12 for d in inc)
        concave = all(b >= a - 1e-12 for a, b in zip(inc, inc[1:]))
    else:
        monotone = all(d >= -1e-12 for d in inc)
        concave = all(b <= a + 1e-12 for a, b in zip(inc, inc[1:]))
    return CapacityProfile(kind=kind, values=values, monotone=monotone, concave=concave)


def submodularity_gap(ladder: ValueLadder, interval, split: int, kind: str) -> float:
    """Gain from splitting ``interval`` at ``split``: v(lo..split-1) +
    v(split..hi) - v(lo..hi). Non-negative for the lower kind."""
    upper = _check_kind(kind)
    lo, hi = interval
    if not (lo < split <= hi):
        raise ValueError("split must be interior to the interval")
    pref = _prefix_masses(ladder.level_masses)
    lvl = ladder.levels
    parts = _cell_pair(lvl, pref, lo, split, hi, upper)
    whole = _cell_single(lvl, pref, lo, hi, upper)
    return parts - whole if not upper else whole - parts


def _cell_single(levels, pref, lo, hi, upper):
    rep = levels[hi] if upper else levels[lo]
    return rep * (pref[hi + 1] - pref[lo])


def _cell_pair(levels, pref, lo, split, hi, upper):
    return _cell_single(levels, pref, lo, split - 1, upper) + _cell_single(
        levels, pref, split, hi, upper
    )


def submodular_delta_holds(ladder: ValueLadder, outer, inner, split: int, kind: str = LOWER,
                           tol: float = 1e-12) -> bool:
    """Splitting gains weakly more on the wider interval (submodularity)."""
    gain_outer = submodularity_gap(ladder, outer, split, kind)
    gain_inner = submodularity_gap(ladder, inner, split, kind)
    return gain_outer >= gain_inner - tol


def supermodular_coarse_holds(ladder: ValueLadder, cuts_a, cuts_b, kind: str = LOWER,
                              tol: float = 1e-12) -> bool:
    """V(join) + V(meet) >= V(a) + V(b) for same-length cutoff vectors (the
    inequality reverses for the upper kind, whose coarse value is minimized)."""
    upper = _check_kind(kind)
    cuts_a, cuts_b = tuple(cuts_a), tuple(cuts_b)
    if len(cuts_a) != len(cuts_b):
        raise AlignmentError("cutoff vectors must have equal length")
    join = tuple(max(a, b) for a, b in zip(cuts_a, cuts_b))
    meet = tuple(min(a, b) for a, b in zip(cuts_a, cuts_b))
    pref = _prefix_masses(ladder.level_masses)
    hi = len(ladder) - 1
    val = lambda cuts: _coarse_raw(ladder.levels, pref, 0, hi, cuts, upper)
    lhs = val(join) + val(meet)
    rhs = val(cuts_a) + val(cuts_b)
    return (lhs <= rhs + tol) if upper else (lhs >= rhs - tol)


def optimum_set(ladder: ValueLadder, n: int, kind: str, interval=None) -> tuple:
    """Every optimal cutoff vector of the (possibly interval-restricted)
    problem, via exhaustive enumeration."""
    upper = _check_kind(kind)
    lo, hi = (0, len(ladder) - 1) if interval is None else interval
    _, optima = _enumerate_raw(ladder.levels, ladder.level_masses, n, upper, lo, hi)
    return tuple(optima)


def restricted_value(ladder: ValueLadder, n: int, kind: str, interval) -> float:
    upper = _check_kind(kind)
    lo, hi = interval
    return _dp_solve(ladder.levels, ladder.level_masses, n, upper, lo, hi)[0]


def weakly_sandwiched(coarse: tuple, fine: tuple) -> bool:
    """fine interleaves below coarse: fine_i <= coarse_i <= fine_{i+1}."""
    if len(fine) != len(coarse) + 1:
        raise AlignmentError("sandwich compares capacities N and N+1")
    return all(
        fine[i] <= coarse[i] <= fine[i + 1] for i in range(len(coarse))
    )


def sandwich_check(ladder: ValueLadder, n: int, kind: str = LOWER) -> bool:
    """Every optimum at capacity ``n`` has a weakly sandwiching optimum at
    ``n + 1``. Vacuously true when the ladder fits within ``n`` levels."""
    if len(ladder) <= n:
        return True
    opt_n = optimum_set(ladder, n, kind)
    opt_n1 = optimum_set(ladder, n + 1, kind)
    for coarse in opt_n:
        if len(coarse) != n - 1:
            continue  # degenerate optimum using fewer blocks
        if not any(
            len(fine) == n and weakly_sandwiched(coarse, fine) for fine in opt_n1
        ):
            return False
    return True


def _sso_sets(high: tuple, low: tuple, high_valid, low_valid) -> bool:
    for ch in high:
        for cl in low:
            if len(ch) != len(cl):
                return False
            join = tuple(max(a, b) for a, b in zip(ch, cl))
            meet = tuple(min(a, b) for a, b in zip(ch, cl))
            if join not in high_valid or meet not in low_valid:
                return False
    return True


def sso_monotone_in_interval(ladder: ValueLadder, n: int, i_low, i_high,
                             kind: str = LOWER) -> bool:
    """Optimum sets of interval-restricted problems are ordered in the strong
    set order when the intervals are."""
    lo1, hi1 = i_low
    lo2, hi2 = i_high
    if lo2 < lo1 or hi2 < hi1:
        raise PreconditionError("intervals must be ordered in the strong set order")
    opt_low = optimum_set(ladder, n, kind, i_low)
    opt_high = optimum_set(ladder, n, kind, i_high)
    return _sso_sets(opt_high, opt_low, set(opt_high), set(opt_low))


def nested_marginal_returns(ladder: ValueLadder, n: int, s, s_prime,
                            kind: str = LOWER, tol: float = 1e-9) -> bool:
    """Marginal value of one more block is larger on the wider interval:
    W(n+1, s') - W(n, s') >= W(n+1, s) - W(n, s).

    Requires a weakly sandwiched pair of selections from the optimum sets of
    (n, s') and (n+1, s); raises PreconditionError when none exists.
    """
    (lo, hi), (lo_p, hi_p) = s, s_prime
    if lo_p > lo or hi_p < hi:
        raise PreconditionError("s must be contained in s_prime")
    opt_coarse = [c for c in optimum_set(ladder, n, kind, s_prime) if len(c) == n - 1]
    opt_fine = [c for c in optimum_set(ladder, n + 1, kind, s) if len(c) == n]
    if not any(
        weakly_sandwiched(c, f) for c in opt_coarse for f in opt_fine
    ):
        raise PreconditionError("no sandwiched selections across the two problems")
    w_n_sp = restricted_value(ladder, n, kind, s_prime)
    w_n1_sp = restricted_value(ladder, n + 1, kind, s_prime)
    w_n_s = restricted_value(ladder, n, kind, s)
    w_n1_s = restricted_value(ladder, n + 1, kind, s)
    lhs = w_n1_sp - w_n_sp
    rhs = w_n1_s - w_n_s
    return (lhs <= rhs + tol) if kind == UPPER else (lhs >= rhs - tol)


def mlr_cutoff_monotonicity(ladder: ValueLadder, shift: DistributionShift, n: int,
                            kind: str = LOWER) -> bool:
    """Optimal cutoffs shift up (strong set order) under an MLR improvement."""
    if len(shift.base) != len(ladder):
        raise AlignmentError("shift does not align with the ladder")
    upper = _check_kind(kind)
    _, opt_base = _enumerate_raw(ladder.levels, shift.base, n, upper)
    _, opt_shift = _enumerate_raw(ladder.levels, shift.shifted, n, upper)
    return _sso_sets(tuple(opt_shift), tuple(opt_base), set(opt_shift), set(opt_base))


def increasing_differences_holds(ladder: ValueLadder, lo: int, hi_small: int, hi_big: int,
                                 cuts_hi, cuts_lo, kind: str = LOWER,
                                 tol: float = 1e-9) -> bool:
    """Coarse-value differences in the cutoff vector grow with the interval:
    V([lo, hi_big], C'') - V([lo, hi_big], C') >= same difference on [lo, hi_small],
    for vectors with the last cutoff of C'' at or above that of C'."""
    upper = _check_kind(kind)
    cuts_hi, cuts_lo = tuple(cuts_hi), tuple(cuts_lo)
    if len(cuts_hi) != len(cuts_lo):
        raise AlignmentError("cutoff vectors must have equal length")
    if cuts_hi and cuts_lo and cuts_hi[-1] < cuts_lo[-1]:
        raise PreconditionError("last cutoff of the high vector must be >=")
    if hi_small > hi_big:
        raise PreconditionError("hi_small must not exceed hi_big")
    pref = _prefix_masses(ladder.level_masses)
    val = lambda h, c: _coarse_raw(ladder.levels, pref, lo, h, c, upper)
    lhs = val(hi_big, cuts_hi) - val(hi_big, cuts_lo)
    rhs = val(hi_small, cuts_hi) - val(hi_small, cuts_lo)
    return (lhs <= rhs + tol) if upper else (lhs >= rhs - tol)

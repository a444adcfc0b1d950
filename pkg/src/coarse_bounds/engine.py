"""Optimal coarse bounds of an act under a capacity constraint.

Given a value ladder (ascending payoff levels with masses) and a capacity
``N``, the *lower bound problem* partitions the levels into at most ``N``
contiguous blocks and maximizes the sum of block contributions, where each
block contributes its lowest level times its total mass. This is the best
expected value attainable by an ``N``-valued act lying weakly below the
original act on every positive-mass state. The *upper bound problem* is the
mirror image: blocks contribute their highest level times mass, and the sum
is minimized: the cheapest ``N``-valued act dominating the original. The
two problems are exchanged by negating the ladder.

Both are solved exactly by dynamic programming over ladder suffixes in
``O(N * L^2)``. When several cutoff vectors are optimal the lexicographically
smallest one is returned; ``enumerate_optima`` recovers the full optimum set
by exhaustive search for instances below a size guard.

Cutoff convention: a cutoff at index ``j`` starts a new block at level ``j``
(cut levels belong to the upper block). A vector of ``B - 1`` strictly
ascending cutoffs in ``[1, L - 1]`` describes a partition into ``B`` blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, inf

import numpy as np

from .acts import Belief, DiscreteAct, ValueLadder, build_ladder
from .errors import InvalidCapacityError, OracleTooLargeError, PreconditionError

LOWER = "lower"
UPPER = "upper"

# Brute-force enumeration guards.
MAX_ORACLE_LEVELS = 22
MAX_ORACLE_VECTORS = 2_000_000

# Ladders at least this long use the vectorized DP fill.
_NUMPY_DP_THRESHOLD = 40


def _check_kind(kind: str) -> bool:
    if kind == LOWER:
        return False
    if kind == UPPER:
        return True
    raise ValueError(f"kind must be {LOWER!r} or {UPPER!r}, got {kind!r}")


def _check_capacity(n) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InvalidCapacityError(f"capacity must be a positive integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class CutoffVector:
    """Strictly ascending level indices where new blocks begin."""

    cuts: tuple

    def __init__(self, cuts):
        cuts = tuple(int(c) for c in cuts)
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError("cutoffs must be strictly ascending")
        object.__setattr__(self, "cuts", cuts)

    def __len__(self):
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def validate(self, num_levels: int, capacity: int) -> None:
        if len(self.cuts) > capacity - 1:
            raise ValueError(f"{len(self.cuts)} cutoffs exceed capacity {capacity}")
        if self.cuts and (self.cuts[0] < 1 or self.cuts[-1] > num_levels - 1):
            raise ValueError("cutoff indices must lie in [1, num_levels - 1]")


@dataclass(frozen=True)
class BoundResult:
    """An optimal capacity-``N`` bound of a ladder.

    ``bound_values[i]`` is the bound act's payoff on ladder level ``i`` (its
    block's lowest level for a lower bound, highest for an upper bound);
    ``value`` is the bound's expectation under the ladder masses; ``exact``
    flags the case where the ladder itself fits within the capacity.
    """

    kind: str
    cutoffs: CutoffVector
    bound_values: tuple
    value: float
    exact: bool

    def blocks(self, num_levels: int) -> list:
        return blocks_from_cuts(self.cutoffs.cuts, num_levels)


@dataclass(frozen=True)
class OracleResult:
    """Exhaustive optimum together with every optimal cutoff vector."""

    bound: BoundResult
    optima: tuple


@dataclass(frozen=True)
class PerceivedDistribution:
    """Atomic distribution placing each block's mass on its representative level."""

    support: tuple
    masses: tuple

    def expectation(self) -> float:
        return sum(v * m for v, m in zip(self.support, self.masses))

    def cdf(self, x: float) -> float:
        return sum(m for v, m in zip(self.support, self.masses) if v <= x)


@dataclass(frozen=True)
class PullBackResult:
    """A bound mapped back to act states; ``violations`` lists zero-mass states
    whose payoff the bound could not stay on the dominated side of."""

    act: DiscreteAct
    violations: tuple


def blocks_from_cuts(cuts, num_levels: int) -> list:
    """Inclusive ``(lo, hi)`` index blocks induced by a cutoff vector."""
    edges = [0, *cuts, num_levels]
    return [(edges[i], edges[i + 1] - 1) for i in range(len(edges) - 1)]


def _prefix_masses(masses) -> list:
    pref = [0.0] * (len(masses) + 1)
    for i, m in enumerate(masses):
        pref[i + 1] = pref[i] + m
    return pref


def _cell(levels, pref, lo: int, hi: int, upper: bool) -> float:
    rep = levels[hi] if upper else levels[lo]
    return rep * (pref[hi + 1] - pref[lo])


def cell_value(block, ladder: ValueLadder, kind: str) -> float:
    """Contribution of one contiguous block: extreme level times block mass."""
    upper = _check_kind(kind)
    lo, hi = block
    if not (0 <= lo <= hi < len(ladder)):
        raise ValueError(f"invalid block {block!r} for {len(ladder)} levels")
    pref = _prefix_masses(ladder.level_masses)
    return _cell(ladder.levels, pref, lo, hi, upper)


def coarse_value(cuts, ladder: ValueLadder, kind: str) -> float:
    """Sum of cell values over the blocks induced by a cutoff vector."""
    upper = _check_kind(kind)
    cuts = cuts.cuts if isinstance(cuts, CutoffVector) else tuple(cuts)
    pref = _prefix_masses(ladder.level_masses)
    return _coarse_raw(ladder.levels, pref, 0, len(ladder) - 1, cuts, upper)


def _coarse_raw(levels, pref, lo, hi, cuts, upper: bool) -> float:
    edges = [lo, *cuts, hi + 1]
    total = 0.0
    for i in range(len(edges) - 1):
        if not (lo <= edges[i] < edges[i + 1] <= hi + 1):
            raise ValueError(f"cutoffs {cuts!r} invalid for range [{lo}, {hi}]")
        total += _cell(levels, pref, edges[i], edges[i + 1] - 1, upper)
    return total


def _dp_tables(levels, pref, lo: int, hi: int, n_blocks: int, upper: bool):
    """Suffix tables V[b][j] = best value partitioning levels[j..hi] into at
    most b blocks. Index j is stored at offset j - lo."""
    length = hi - lo + 1
    if length >= _NUMPY_DP_THRESHOLD:
        return _dp_tables_numpy(levels, pref, lo, hi, n_blocks, upper)
    stop = [_cell(levels, pref, j, hi, upper) for j in range(lo, hi + 1)]
    tables = [None, stop]
    for b in range(2, n_blocks + 1):
        prev = tables[b - 1]
        row = list(stop)
        for j in range(lo, hi):
            off = j - lo
            best = row[off]
            for e in range(j, hi):
                cand = (
                    levels[e if upper else j] * (pref[e + 1] - pref[j])
                    + prev[e + 1 - lo]
                )
                if (cand < best) if upper else (cand > best):
                    best = cand
            row[off] = best
        tables.append(row)
    return tables


def _dp_tables_numpy(levels, pref, lo: int, hi: int, n_blocks: int, upper: bool):
    lvl = np.asarray(levels[lo : hi + 1], dtype=float)
    pre = np.asarray(pref[lo : hi + 2], dtype=float)
    length = hi - lo + 1
    # cellmat[j, e] = value of block [j..e] (raw indices offset by lo)
    span = pre[None, 1:] - pre[:-1, None]
    rep = lvl[None, :] if upper else lvl[:, None]
    cellmat = rep * span
    valid = np.tril(np.ones((length, length), dtype=bool)).T
    bad = inf if upper else -inf
    cellmat = np.where(valid, cellmat, bad)
    reduce_ = np.minimum if upper else np.maximum
    stop = cellmat[:, -1].copy()
    tables = [None, stop]
    for _ in range(2, n_blocks + 1):
        prev = tables[-1]
        cand = cellmat[:, :-1] + prev[None, 1:]
        row = reduce_(stop, (cand.min if upper else cand.max)(axis=1))
        tables.append(row)
    return [t if t is None else list(map(float, t)) for t in tables]


def _dp_prefix_tables(levels, masses, n_blocks: int, upper: bool):
    """Prefix tables P[b][j] = best value partitioning levels[0..j] into at
    most b blocks. Mirrors the suffix tables used by the solver."""
    length = len(levels)
    pref = _prefix_masses(masses)
    start = [_cell(levels, pref, 0, j, upper) for j in range(length)]
    tables = [None, start]
    if length >= _NUMPY_DP_THRESHOLD:
        lvl = np.asarray(levels, dtype=float)
        pre = np.asarray(pref, dtype=float)
        span = pre[None, 1:] - pre[:-1, None]  # span[s, j] = mass of [s..j]
        rep = lvl[None, :] if upper else lvl[:, None]
        cellmat = rep * span
        valid = np.tril(np.ones((length, length), dtype=bool)).T
        bad = inf if upper else -inf
        cellmat = np.where(valid, cellmat, bad)
        reduce_ = np.minimum if upper else np.maximum
        start_arr = np.asarray(start)
        tables = [None, start_arr]
        for _ in range(2, n_blocks + 1):
            prev = tables[-1]
            cand = cellmat[1:, :] + prev[:-1, None]  # block [s..j] after prefix [0..s-1]
            row = reduce_(start_arr, (cand.min if upper else cand.max)(axis=0))
            tables.append(row)
        return [t if t is None else list(map(float, t)) for t in tables]
    for b in range(2, n_blocks + 1):
        prev = tables[b - 1]
        row = list(start)
        for j in range(length):
            best = row[j]
            for s in range(1, j + 1):
                cand = (
                    levels[j if upper else s] * (pref[j + 1] - pref[s]) + prev[s - 1]
                )
                if (cand < best) if upper else (cand > best):
                    best = cand
            row[j] = best
        tables.append(row)
    return tables


def _dp_solve(levels, masses, n: int, upper: bool, lo: int = 0, hi=None):
    """Optimal value and lexicographically smallest optimal cutoff vector for
    levels[lo..hi] under capacity n."""
    if hi is None:
        hi = len(levels) - 1
    pref = _prefix_masses(masses)
    length = hi - lo + 1
    n_eff = min(n, length)
    tables = _dp_tables(levels, pref, lo, hi, n_eff, upper)
    value = tables[n_eff][0]
    # Greedy reconstruction: at each state prefer closing the final block
    # (shorter vectors sort first), otherwise the smallest feasible cut.
    cuts = []
    j, b = lo, n_eff
    while True:
        target = tables[b][j - lo]
        if _cell(levels, pref, j, hi, upper) == target:
            break
        found = False
        for e in range(j, hi):
            cand = (
                levels[e if upper else j] * (pref[e + 1] - pref[j])
                + tables[b - 1][e + 1 - lo]
            )
            if cand == target:
                cuts.append(e + 1)
                j, b = e + 1, b - 1
                found = True
                break
        if not found:  # pragma: no cover - DP and reconstruction share arithmetic
            raise AssertionError("DP reconstruction failed to match its own table")
    return value, tuple(cuts)


def _bound_from_cuts(ladder: ValueLadder, cuts, value: float, n: int, kind: str) -> BoundResult:
    upper = kind == UPPER
    bound_values = []
    for blo, bhi in blocks_from_cuts(cuts, len(ladder)):
        rep = ladder.levels[bhi if upper else blo]
        bound_values.extend([rep] * (bhi - blo + 1))
    return BoundResult(
        kind=kind,
        cutoffs=CutoffVector(cuts),
        bound_values=tuple(bound_values),
        value=value,
        exact=len(ladder) <= n,
    )


def bound(ladder: ValueLadder, n, kind: str) -> BoundResult:
    """Optimal lower or upper bound of a ladder at capacity ``n``."""
    upper = _check_kind(kind)
    n = _check_capacity(n)
    value, cuts = _dp_solve(ladder.levels, ladder.level_masses, n, upper)
    return _bound_from_cuts(ladder, cuts, value, n, kind)


def siminf(ladder: ValueLadder, n) -> BoundResult:
    """Best expected value of an at-most-``n``-valued act below the ladder."""
    return bound(ladder, n, LOWER)


def simsup(ladder: ValueLadder, n) -> BoundResult:
    """Least expected value of an at-most-``n``-valued act above the ladder.

    Equals the negation dual of :func:`siminf` applied to the negated ladder.
    """
    return bound(ladder, n, UPPER)


def _enumeration_size(length: int, n: int) -> int:
    return sum(comb(length - 1, b) for b in range(min(n, length)))


def enumerate_cut_vectors(length: int, n: int):
    """All ascending cutoff vectors describing at most ``n`` blocks."""
    for b in range(min(n, length)):
        yield from combinations(range(1, length), b)


def _enumerate_raw(levels, masses, n: int, upper: bool, lo: int = 0, hi=None):
    """Exhaustive optimum over levels[lo..hi]: returns (value, optima) where
    optima holds every optimal cutoff vector (global indices), sorted."""
    if hi is None:
        hi = len(levels) - 1
    length = hi - lo + 1
    if length > MAX_ORACLE_LEVELS:
        raise OracleTooLargeError(f"{length} levels exceed the oracle guard")
    if comb(length - 1, min(n, length) - 1) > MAX_ORACLE_VECTORS:
        raise OracleTooLargeError("too many cutoff vectors to enumerate")
    pref = _prefix_masses(masses)
    best = None
    optima = []
    for rel_cuts in enumerate_cut_vectors(length, n):
        cuts = tuple(c + lo for c in rel_cuts)
        val = _coarse_raw(levels, pref, lo, hi, cuts, upper)
        if best is None or ((val < best) if upper else (val > best)):
            best = val
            optima = [cuts]
        elif val == best:
            optima.append(cuts)
    return best, sorted(optima)


def brute_force_bound(ladder: ValueLadder, n, kind: str) -> OracleResult:
    """Independent exhaustive oracle for :func:`bound` on small ladders."""
    upper = _check_kind(kind)
    n = _check_capacity(n)
    value, optima = _enumerate_raw(ladder.levels, ladder.level_masses, n, upper)
    return OracleResult(
        bound=_bound_from_cuts(ladder, optima[0], value, n, kind),
        optima=tuple(optima),
    )


def enumerate_optima(ladder: ValueLadder, n, kind: str) -> tuple:
    """Every optimal cutoff vector, lexicographically sorted."""
    return brute_force_bound(ladder, n, kind).optima


def pull_back(result: BoundResult, act: DiscreteAct, belief: Belief) -> PullBackResult:
    """Map a ladder bound back to a per-state act.

    Positive-mass states take their ladder level's bound value. Zero-mass
    states take the nearest bound value on the dominated side; when none
    exists the state is flagged as an unavoidable dominance violation.
    """
    ladder = build_ladder(act, belief)
    if len(result.bound_values) != len(ladder):
        raise PreconditionError("bound does not match the act/belief ladder")
    upper = result.kind == UPPER
    level_index = {v: i for i, v in enumerate(ladder.levels)}
    distinct_bounds = sorted(set(result.bound_values))
    values = []
    violations = []
    for sid, v, m in zip(act.state_ids, act.values, belief.masses):
        if m > 0.0:
            values.append(result.bound_values[level_index[v]])
            continue
        if upper:
            feasible = [b for b in distinct_bounds if b >= v]
            if feasible:
                values.append(feasible[0])
            else:
                values.append(distinct_bounds[-1])
                violations.append(sid)
        else:
            feasible = [b for b in distinct_bounds if b <= v]
            if feasible:
                values.append(feasible[-1])
            else:
                values.append(distinct_bounds[0])
                violations.append(sid)
    return PullBackResult(
        act=DiscreteAct(act.state_ids, values), violations=tuple(violations)
    )


def perceived_distribution(ladder: ValueLadder, n, attitude: str) -> PerceivedDistribution:
    """Atoms at block representatives with block masses.

    A cautious agent perceives each block at its minimum level, a reckless
    agent at its maximum; the expectation equals the corresponding bound
    value, and the original ladder dominates (is dominated by) the cautious
    (reckless) perception in the first-order stochastic sense.
    """
    kind = attitude_kind(attitude)
    result = bound(ladder, n, kind)
    pref = _prefix_masses(ladder.level_masses)
    support, masses = [], []
    for blo, bhi in result.blocks(len(ladder)):
        support.append(ladder.levels[bhi if kind == UPPER else blo])
        masses.append(pref[bhi + 1] - pref[blo])
    return PerceivedDistribution(tuple(support), tuple(masses))


def attitude_kind(attitude) -> str:
    """Map an attitude (enum or string) to the bound kind it evaluates."""
    name = getattr(attitude, "value", attitude)
    if name == "cautious":
        return LOWER
    if name == "reckless":
        return UPPER
    raise ValueError(f"attitude must be 'cautious' or 'reckless', got {attitude!r}")

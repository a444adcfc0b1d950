"""Comparison rules and completions built on the coarse bounds.

Two acts are ranked when one statewise-dominates the other, or when the best
capacity-``N`` lower bound of one is worth at least the least upper bound of
the other. The relation is incomplete; the Cautious (Reckless) completion
scores every act by its lower (upper) bound value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .acts import Belief, DiscreteAct, build_ladder, distinct_positive_mass_values
from .errors import AlignmentError
from .engine import attitude_kind, bound


class Verdict(enum.Enum):
    STRICTLY_PREFERS_F = "strictly_prefers_f"
    STRICTLY_PREFERS_G = "strictly_prefers_g"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"


class Provenance(enum.Enum):
    BY_DOMINANCE = "by_dominance"
    BY_BOUNDS = "by_bounds"
    BY_BOTH = "by_both"


class Attitude(enum.Enum):
    CAUTIOUS = "cautious"
    RECKLESS = "reckless"


@dataclass(frozen=True)
class PreferenceVerdict:
    verdict: Verdict
    provenance: Provenance

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "provenance": self.provenance.value}


def _check_same_states(f: DiscreteAct, g: DiscreteAct) -> None:
    if f.state_ids != g.state_ids:
        raise AlignmentError("acts must share the same ordered state set")


def statewise_dominates(f: DiscreteAct, g: DiscreteAct) -> bool:
    """True iff f pays at least as much as g in every state, null or not."""
    _check_same_states(f, g)
    return all(a >= b for a, b in zip(f.values, g.values))


def value(f: DiscreteAct, belief: Belief, n, attitude) -> float:
    """Completion value: lower-bound value if cautious, upper if reckless."""
    ladder = build_ladder(f, belief)
    return bound(ladder, n, attitude_kind(attitude)).value


def is_well_understood(f: DiscreteAct, belief: Belief, n) -> bool:
    """True iff f takes at most n distinct values on positive-mass states."""
    return len(distinct_positive_mass_values(f, belief)) <= n


def simple_bounds_compare(f: DiscreteAct, g: DiscreteAct, belief: Belief, n) -> PreferenceVerdict:
    """Four-way verdict of the bound-based comparison rule.

    Each direction holds by dominance or by the bound inequality
    (lower bound of the preferred act >= upper bound of the other);
    both directions give indifference, neither gives incomparability.
    """
    _check_same_states(f, g)
    f_dom = statewise_dominates(f, g)
    g_dom = statewise_dominates(g, f)
    lf = build_ladder(f, belief)
    lg = build_ladder(g, belief)
    inf_f = bound(lf, n, "lower").value
    sup_f = bound(lf, n, "upper").value
    inf_g = bound(lg, n, "lower").value
    sup_g = bound(lg, n, "upper").value
    f_bounds = inf_f >= sup_g
    g_bounds = inf_g >= sup_f
    fw = f_dom or f_bounds
    bw = g_dom or g_bounds
    if fw and bw:
        verdict = Verdict.INDIFFERENT
    elif fw:
        verdict = Verdict.STRICTLY_PREFERS_F
    elif bw:
        verdict = Verdict.STRICTLY_PREFERS_G
    else:
        verdict = Verdict.INCOMPARABLE
    if verdict is Verdict.INCOMPARABLE:
        provenance = Provenance.BY_BOUNDS
    else:
        dom_support = (fw and f_dom) or (bw and g_dom)
        bounds_support = (fw and f_bounds) or (bw and g_bounds)
        if dom_support and bounds_support:
            provenance = Provenance.BY_BOTH
        elif dom_support:
            provenance = Provenance.BY_DOMINANCE
        else:
            provenance = Provenance.BY_BOUNDS
    return PreferenceVerdict(verdict, provenance)


def weakly_prefers(f: DiscreteAct, g: DiscreteAct, belief: Belief, n) -> bool:
    v = simple_bounds_compare(f, g, belief, n).verdict
    return v in (Verdict.STRICTLY_PREFERS_F, Verdict.INDIFFERENT)


def mix(f: DiscreteAct, g: DiscreteAct, alpha: float) -> DiscreteAct:
    """Statewise convex combination alpha*f + (1-alpha)*g."""
    _check_same_states(f, g)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    return DiscreteAct(
        f.state_ids,
        [alpha * a + (1.0 - alpha) * b for a, b in zip(f.values, g.values)],
    )


def are_comonotone(f: DiscreteAct, g: DiscreteAct, belief: Belief | None = None) -> bool:
    """No state pair is ranked oppositely by f and g.

    Restricted to positive-mass states when a belief is supplied. Uses the
    quadratic pairwise check on small state sets and a sort otherwise.
    """
    _check_same_states(f, g)
    if belief is not None:
        if len(belief) != len(f):
            raise AlignmentError("belief does not align with the acts")
        pairs = [
            (a, b)
            for a, b, m in zip(f.values, g.values, belief.masses)
            if m > 0.0
        ]
    else:
        pairs = list(zip(f.values, g.values))
    if len(pairs) <= 1000:
        for i in range(len(pairs)):
            ai, bi = pairs[i]
            for aj, bj in pairs[i + 1 :]:
                if (ai - aj) * (bi - bj) < 0.0:
                    return False
        return True
    pairs.sort()
    running_max = -float("inf")
    prev_a = None
    group_max = -float("inf")
    for a, b in pairs:
        if prev_a is not None and a > prev_a:
            running_max = max(running_max, group_max)
            group_max = -float("inf")
        if b < running_max:
            return False
        group_max = max(group_max, b)
        prev_a = a
    return True

"""Finite acts in utility space, beliefs, and the value ladder.

An act is identified with its utility image: a finite map from state labels
to real payoffs. A belief assigns probability mass to the same states. The
*value ladder* is the pushforward of an act through its belief: the distinct
payoff values carried by positive-mass states, listed in ascending order with
their aggregated masses. All bound computations run on ladders, so states
that share a value (or carry no mass) are collapsed before any optimization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

from .errors import AlignmentError, DegenerateBeliefError

MASS_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteAct:
    """A finite-support act: ``values[i]`` is the payoff in state ``state_ids[i]``."""

    state_ids: tuple
    values: tuple

    def __init__(self, state_ids, values):
        state_ids = tuple(state_ids)
        values = tuple(float(v) for v in values)
        if len(state_ids) != len(values):
            raise AlignmentError(
                f"{len(state_ids)} state ids vs {len(values)} values"
            )
        if len(state_ids) == 0:
            raise AlignmentError("an act needs at least one state")
        if len(set(state_ids)) != len(state_ids):
            raise AlignmentError("state ids must be unique")
        if not all(isfinite(v) for v in values):
            raise ValueError("act values must be finite")
        object.__setattr__(self, "state_ids", state_ids)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.state_ids)


@dataclass(frozen=True)
class Belief:
    """Probability masses aligned with an act's states; zero mass marks a null state."""

    masses: tuple

    def __init__(self, masses):
        masses = tuple(float(m) for m in masses)
        if len(masses) == 0:
            raise DegenerateBeliefError("a belief needs at least one state")
        if any(m < 0 or not isfinite(m) for m in masses):
            raise ValueError("belief masses must be finite and non-negative")
        if all(m == 0.0 for m in masses):
            raise DegenerateBeliefError("belief puts no mass on any state")
        if abs(sum(masses) - 1.0) > MASS_TOL:
            raise ValueError(f"belief masses sum to {sum(masses)!r}, not 1")
        object.__setattr__(self, "masses", masses)

    def __len__(self):
        return len(self.masses)


@dataclass(frozen=True)
class ValueLadder:
    """Ascending distinct payoff levels with aggregated positive masses summing to 1."""

    levels: tuple
    level_masses: tuple

    def __init__(self, levels, level_masses):
        levels = tuple(float(v) for v in levels)
        level_masses = tuple(float(m) for m in level_masses)
        if len(levels) != len(level_masses):
            raise AlignmentError("levels and masses must align")
        if len(levels) == 0:
            raise DegenerateBeliefError("a ladder needs at least one level")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError("ladder levels must be strictly ascending")
        if any(m < 0 for m in level_masses):
            raise ValueError("ladder masses must be non-negative")
        if abs(sum(level_masses) - 1.0) > MASS_TOL:
            raise ValueError("ladder masses must sum to 1")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "level_masses", level_masses)

    def __len__(self):
        return len(self.levels)

    def expectation(self) -> float:
        return sum(v * m for v, m in zip(self.levels, self.level_masses))


def check_aligned(act: DiscreteAct, belief: Belief) -> None:
    if len(act) != len(belief):
        raise AlignmentError(
            f"act has {len(act)} states but belief has {len(belief)} masses"
        )


def build_ladder(act: DiscreteAct, belief: Belief) -> ValueLadder:
    """Group positive-mass states by payoff value.

    Zero-mass states contribute no level of their own; if their value happens
    to coincide with a positive-mass level they simply add zero mass to it.
    """
    check_aligned(act, belief)
    agg: dict[float, float] = {}
    for v, m in zip(act.values, belief.masses):
        if m > 0.0:
            agg[v] = agg.get(v, 0.0) + m
    if not agg:
        raise DegenerateBeliefError("belief puts no mass on any state")
    levels = sorted(agg)
    return ValueLadder(levels, [agg[v] for v in levels])


def negate_ladder(ladder: ValueLadder) -> ValueLadder:
    """The ladder of the negated act: levels mirrored about zero."""
    return ValueLadder(
        [-v for v in reversed(ladder.levels)], tuple(reversed(ladder.level_masses))
    )


def distinct_positive_mass_values(act: DiscreteAct, belief: Belief) -> tuple:
    """Ascending distinct payoffs among positive-mass states."""
    check_aligned(act, belief)
    return tuple(
        sorted({v for v, m in zip(act.values, belief.masses) if m > 0.0})
    )

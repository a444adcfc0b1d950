"""Shared random-instance generators for the test suites.

Dyadic instances have masses k/2^10 and small integer levels, so every
partial sum and block product is exactly representable and value comparisons
on them are bit-exact; float instances use generic continuous draws. The
generators live with the acceptance suites so tests and the accept command
exercise identical distributions.
"""

from coarse_bounds.acceptance import dyadic_ladder, float_ladder, random_act_belief

__all__ = ["dyadic_ladder", "float_ladder", "random_act_belief"]

"""Fock-space truncation policy and the warnings it raises."""

from __future__ import annotations

import math
import os

NMAX_ENV = "CATDECAY_NMAX_OVERRIDE"
TAIL_TOLERANCE = 1e-10


class TruncationWarning(UserWarning):
    """Probability mass beyond the Fock cutoff exceeds ``TAIL_TOLERANCE``."""


def truncation_rule(alpha_abs: float) -> int:
    """Default cutoff ceil(|alpha|^2 + 8|alpha| + 20).

    ``CATDECAY_NMAX_OVERRIDE`` in the environment replaces the rule outright.
    """
    override = os.environ.get(NMAX_ENV)
    if override:
        value = int(override)
        if value < 0:
            raise ValueError(f"{NMAX_ENV} must be >= 0, got {value}")
        return value
    a = abs(alpha_abs)
    return math.ceil(a * a + 8.0 * a + 20.0)

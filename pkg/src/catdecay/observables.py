"""Scalar diagnostics of the damped cat: moments, squeezing, photon statistics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from catdecay.dynamics import DecayedCat
from catdecay.specfun import coherent_overlap, log_factorials
from catdecay.truncation import TAIL_TOLERANCE, TruncationWarning

__all__ = [
    "SqueezingFactors",
    "PhotonNumberDistribution",
    "NegativeProbabilityError",
    "moment_terms",
    "normally_ordered_moment",
    "squeezing_factors",
    "squeezing_ecs_closed",
    "photon_number_distribution",
    "interference_decay_factor",
    "decoherence_threshold_alpha",
    "mean_photon_number",
    "DEFAULT_EPSILON",
]

DEFAULT_EPSILON = 0.0125
_CLAMP = 1e-15


class NegativeProbabilityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SqueezingFactors:
    """S1 = 4 Var(X) - 1 and S2 = 4 Var(Y) - 1; negative means squeezed."""

    s1: float
    s2: float

    @property
    def squeezed(self) -> bool:
        return self.s1 < 0 or self.s2 < 0


@dataclass(frozen=True)
class PhotonNumberDistribution:
    probs: np.ndarray
    n_max: int

    def __post_init__(self):
        self.probs.flags.writeable = False

    @property
    def total(self) -> float:
        return float(self.probs.sum())

    def __getitem__(self, n):
        return self.probs[n]

    def __len__(self):
        return len(self.probs)


def moment_terms(dc: DecayedCat) -> list[tuple[complex, complex, complex]]:
    """(weight, a_j, a_j') for the four dyads, weight = A e^{i phi_jj'} <a_j'|a_j>."""
    cat = dc.cat
    comps = cat.components
    out = []
    for j in (1, 2):
        for jp in (1, 2):
            if j == jp:
                phase = 1.0
            else:
                phase = cat.phase if j > jp else cat.phase.conjugate()
            a, b = comps[j - 1], comps[jp - 1]
            out.append((cat.norm_A * phase * coherent_overlap(b, a), a, b))
    return out


def normally_ordered_moment(dc: DecayedCat, m: int, n: int) -> complex:
    """<a^dag^m a^n> of the damped cat.

    Four-term closed form; the overlap enters with exponent 1 because the
    (1 - mu) power from the density operator combines with the mu power of
    the shrunken components.
    """
    if m < 0 or n < 0:
        raise ValueError(f"moment orders must be >= 0, got ({m}, {n})")
    scale = dc.mu ** (0.5 * (m + n))
    total = 0j
    for w, a, b in moment_terms(dc):
        total += w * a**n * b.conjugate() ** m
    return complex(total * scale)


def squeezing_factors(dc: DecayedCat) -> SqueezingFactors:
    """Quadrature squeezing for X = (a + a^dag)/2, Y = (a - a^dag)/(2i), any phase."""
    a1 = normally_ordered_moment(dc, 0, 1)
    a2 = normally_ordered_moment(dc, 0, 2)
    n = normally_ordered_moment(dc, 1, 1).real
    s1 = 2.0 * a2.real + 2.0 * n - 4.0 * a1.real**2
    s2 = -2.0 * a2.real + 2.0 * n - 4.0 * a1.imag**2
    return SqueezingFactors(s1, s2)


def squeezing_ecs_closed(alpha: float, tau: float) -> SqueezingFactors:
    """Closed-form squeezing of a damped even cat with real amplitude."""
    alpha = float(alpha)
    if alpha < 0:
        raise ValueError("squeezing_ecs_closed takes real alpha >= 0")
    mu = math.exp(-tau)
    e = math.exp(-2.0 * alpha * alpha)
    a2 = alpha * alpha
    return SqueezingFactors(4.0 * mu * a2 / (1.0 + e), -4.0 * mu * a2 * e / (1.0 + e))


def interference_decay_factor(alpha_abs: float, tau: float) -> float:
    """f = exp(-2 |alpha|^2 (1 - e^{-tau})), the damping of every interference term."""
    return math.exp(-2.0 * alpha_abs * alpha_abs * -math.expm1(-tau))


def photon_number_distribution(dc: DecayedCat, n_max: int | None = None) -> PhotonNumberDistribution:
    """P(n) = 2A (mu|a|^2)^n/n! e^{-mu|a|^2} [1 + (-1)^n f cos(phi)].

    Raises:
        NegativeProbabilityError: if any entry is below -1e-15 (entries in
            (-1e-15, 0) are rounding and clamped to zero).
    """
    if n_max is None:
        n_max = dc.default_nmax()
    cat = dc.cat
    lam = dc.mu * abs(cat.alpha) ** 2
    n = np.arange(n_max + 1)
    if lam == 0.0:
        poisson = (n == 0).astype(float)
    else:
        poisson = np.exp(n * math.log(lam) - lam - log_factorials(n_max))
    f = interference_decay_factor(abs(cat.alpha), dc.tau)
    parity = np.where(n % 2 == 0, 1.0, -1.0)
    probs = 2.0 * cat.norm_A * poisson * (1.0 + parity * f * cat.phase.real)
    if probs.min() < -_CLAMP:
        raise NegativeProbabilityError(f"P(n) has entry {probs.min():.3e} < 0")
    probs = np.where(probs < 0, 0.0, probs)
    tail = 1.0 - probs.sum()
    if tail > TAIL_TOLERANCE:
        warnings.warn(f"P(n) truncated at n_max={n_max} misses {tail:.3e} of probability", TruncationWarning, stacklevel=2)
    return PhotonNumberDistribution(probs, n_max)


def decoherence_threshold_alpha(
    tau: float, epsilon: float = DEFAULT_EPSILON, alpha_grid: Sequence[float] | None = None
) -> float | None:
    """Smallest grid amplitude whose interference factor has dropped to ``epsilon``.

    Returns None when no grid point qualifies. The default grid is 1, 2, ..., 10.
    """
    if alpha_grid is None:
        alpha_grid = range(1, 11)
    grid = [float(a) for a in alpha_grid]
    if not grid:
        raise ValueError("alpha_grid is empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("alpha_grid must be ascending")
    for a in grid:
        if interference_decay_factor(a, tau) <= epsilon:
            return a
    return None


def mean_photon_number(dc: DecayedCat) -> float:
    value = normally_ordered_moment(dc, 1, 1)
    if abs(value.imag) > 1e-12:
        raise ArithmeticError(f"<a^dag a> has imaginary part {value.imag:.3e}")
    return value.real

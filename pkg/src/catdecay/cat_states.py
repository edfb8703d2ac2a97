"""Two-component Schrodinger-cat states A^(1/2) [|alpha> + e^(i phi) |-alpha>]."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from catdecay.specfun import coherent_fock_vector, unit_phase
from catdecay.truncation import TAIL_TOLERANCE, TruncationWarning, truncation_rule

__all__ = [
    "CatState",
    "DegenerateNormError",
    "new_cat",
    "ecs",
    "ocs",
    "yss",
    "fock_amplitudes",
]

NORM_FLOOR = 1e-12
OCS_ALPHA_FLOOR = 1e-4


class DegenerateNormError(ValueError):
    """The superposition has (numerically) zero norm."""


@dataclass(frozen=True)
class CatState:
    alpha: complex
    phi: float
    norm_A: float = field(repr=False)

    @property
    def phase(self) -> complex:
        """e^(i phi), snapped at multiples of pi/2."""
        return unit_phase(self.phi)

    @property
    def components(self) -> tuple[complex, complex]:
        return (self.alpha, -self.alpha)


def _norm_denominator(alpha: complex, phi: float) -> float:
    return 1.0 + unit_phase(phi).real * math.exp(-2.0 * abs(alpha) ** 2)


def new_cat(alpha: complex, phi: float) -> CatState:
    """Build a normalized cat with amplitude ``alpha`` and relative phase ``phi``.

    The normalization is A = 1 / (2 [1 + cos(phi) exp(-2|alpha|^2)]).

    Raises:
        DegenerateNormError: if the bracket falls below 1e-12, which happens for
            phi near pi and vanishing |alpha|.
    """
    alpha = complex(alpha)
    phi = float(phi)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag) and math.isfinite(phi)):
        raise ValueError("alpha and phi must be finite")
    denom = _norm_denominator(alpha, phi)
    if denom <= NORM_FLOOR:
        raise DegenerateNormError(
            f"cat with alpha={alpha}, phi={phi} has vanishing norm (1 + cos(phi) e^(-2|alpha|^2) = {denom:.3e})"
        )
    return CatState(alpha, phi, 1.0 / (2.0 * denom))


def ecs(alpha: complex) -> CatState:
    return new_cat(alpha, 0.0)


def ocs(alpha: complex) -> CatState:
    if abs(alpha) <= OCS_ALPHA_FLOOR:
        raise DegenerateNormError(f"odd cat needs |alpha| > {OCS_ALPHA_FLOOR}, got {abs(alpha)}")
    return new_cat(alpha, math.pi)


def yss(alpha: complex) -> CatState:
    return new_cat(alpha, 0.5 * math.pi)


def fock_amplitudes(cat: CatState, n_max: int | None = None) -> np.ndarray:
    """Number-basis amplitudes c_n = sqrt(A) (1 + e^(i phi) (-1)^n) <n|alpha>.

    Emits :class:`TruncationWarning` when more than 1e-10 of the norm lies
    beyond ``n_max``.
    """
    if n_max is None:
        n_max = truncation_rule(abs(cat.alpha))
    coh = coherent_fock_vector(cat.alpha, n_max)
    parity = np.where(np.arange(n_max + 1) % 2 == 0, 1.0, -1.0)
    c = math.sqrt(cat.norm_A) * (1.0 + cat.phase * parity) * coh
    tail = 1.0 - float(np.vdot(c, c).real)
    if tail > TAIL_TOLERANCE:
        warnings.warn(
            f"n_max={n_max} leaves {tail:.3e} of the norm of {cat} outside the cutoff",
            TruncationWarning,
            stacklevel=2,
        )
    return c

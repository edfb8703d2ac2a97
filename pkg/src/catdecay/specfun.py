"""Special functions used by the analytic formulas.

Everything that carries a factorial is evaluated in log domain and only
exponentiated at the end, so amplitudes like alpha**n / sqrt(n!) stay finite
for n well past 170.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LogDomainScalar",
    "log_factorial",
    "log_factorials",
    "laguerre_assoc",
    "coherent_overlap",
    "log_coherent_overlap",
    "coherent_fock_amplitude",
    "log_coherent_fock_amplitude",
    "coherent_fock_vector",
    "unit_phase",
]

_EXACT_FACTORIAL_MAX = 20


@dataclass(frozen=True)
class LogDomainScalar:
    """A complex number stored as ``sign_phase * exp(log_magnitude)``."""

    log_magnitude: float
    sign_phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        if abs(abs(self.sign_phase) - 1.0) > 1e-12:
            raise ValueError(f"sign_phase must have unit modulus, got {self.sign_phase!r}")

    @classmethod
    def from_linear(cls, value: complex) -> "LogDomainScalar":
        if value == 0:
            return cls(-math.inf, 1.0 + 0.0j)
        mag = abs(value)
        return cls(math.log(mag), complex(value) / mag)

    def __mul__(self, other: "LogDomainScalar") -> "LogDomainScalar":
        phase = self.sign_phase * other.sign_phase
        return LogDomainScalar(self.log_magnitude + other.log_magnitude, phase / abs(phase))

    def to_linear(self) -> complex:
        if self.log_magnitude == -math.inf:
            return 0j
        return self.sign_phase * math.exp(self.log_magnitude)


def log_factorial(n: int) -> float:
    """Return ln(n!) for a nonnegative integer ``n``."""
    n = int(n)
    if n < 0:
        raise ValueError(f"log_factorial needs n >= 0, got {n}")
    if n <= _EXACT_FACTORIAL_MAX:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1.0)


def log_factorials(n_max: int) -> np.ndarray:
    """ln(k!) for k = 0..n_max as an array."""
    return np.array([log_factorial(k) for k in range(n_max + 1)], dtype=float)


def laguerre_assoc(m: int, k: int, x: float) -> float:
    """Associated Laguerre polynomial L_m^k(x).

    Uses the ascending three-term recurrence in ``m``. A negative upper
    index is reflected with

        L_m^{-j}(x) = (-x)^j (m-j)!/m! L_{m-j}^{j}(x),

    which requires ``m >= j``; L_0^k = 1 for every k.
    """
    m = int(m)
    k = int(k)
    if m < 0:
        raise ValueError(f"Laguerre order must be >= 0, got {m}")
    if m == 0:
        return 1.0
    if k < 0:
        j = -k
        if m < j:
            raise ValueError(f"L_{m}^{k} is outside the reflection domain (need m >= {j})")
        scale = math.exp(log_factorial(m - j) - log_factorial(m))
        return (-x) ** j * scale * _laguerre_nonneg(m - j, j, x)
    return _laguerre_nonneg(m, k, x)


def _laguerre_nonneg(m: int, k: int, x: float) -> float:
    prev, cur = 1.0, 1.0 + k - x
    if m == 0:
        return prev
    for i in range(1, m):
        prev, cur = cur, ((2 * i + 1 + k - x) * cur - (i + k) * prev) / (i + 1)
    return cur


def unit_phase(phi: float) -> complex:
    """exp(i*phi), exact at multiples of pi/2.

    Snapping keeps parity-forbidden amplitudes at exactly zero instead of
    ~1e-16 times a possibly large normalization.
    """
    quarter = phi / (0.5 * math.pi)
    q = round(quarter)
    if abs(quarter - q) < 1e-12:
        return (1 + 0j, 1j, -1 + 0j, -1j)[q % 4]
    return cmath.exp(1j * phi)


def log_coherent_overlap(alpha: complex, beta: complex) -> complex:
    """Principal log of <alpha|beta>."""
    alpha = complex(alpha)
    beta = complex(beta)
    return -0.5 * abs(alpha) ** 2 - 0.5 * abs(beta) ** 2 + alpha.conjugate() * beta


def coherent_overlap(alpha: complex, beta: complex) -> complex:
    """<alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta)."""
    return cmath.exp(log_coherent_overlap(alpha, beta))


def log_coherent_fock_amplitude(alpha: complex, n: int) -> LogDomainScalar:
    alpha = complex(alpha)
    if n < 0:
        raise ValueError(f"Fock index must be >= 0, got {n}")
    r = abs(alpha)
    if r == 0.0:
        return LogDomainScalar(0.0 if n == 0 else -math.inf)
    logmag = -0.5 * r * r + n * math.log(r) - 0.5 * log_factorial(n)
    return LogDomainScalar(logmag, cmath.exp(1j * n * cmath.phase(alpha)))


def coherent_fock_amplitude(alpha: complex, n: int) -> complex:
    """<n|alpha> = exp(-|alpha|^2/2) alpha^n / sqrt(n!)."""
    return log_coherent_fock_amplitude(alpha, n).to_linear()


def coherent_fock_vector(alpha: complex, n_max: int) -> np.ndarray:
    """Vector of <n|alpha> for n = 0..n_max, evaluated in log domain."""
    alpha = complex(alpha)
    n = np.arange(n_max + 1)
    r = abs(alpha)
    if r == 0.0:
        out = np.zeros(n_max + 1, dtype=complex)
        out[0] = 1.0
        return out
    logmag = -0.5 * r * r + n * math.log(r) - 0.5 * log_factorials(n_max)
    return np.exp(logmag) * np.exp(1j * n * cmath.phase(alpha))

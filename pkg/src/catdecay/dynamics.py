"""Damped cat states in a zero-temperature cavity.

The closed-form solution of the amplitude-damping master equation is

    rho(tau) = A sum_{j,j'} e^{i phi_{jj'}} <a_j|a_j'>^(1-mu) |sqrt(mu) a_j><sqrt(mu) a_j'|

with a_1 = alpha, a_2 = -alpha and mu = e^{-tau}. :func:`lindblad_evolve`
integrates the master equation itself and serves as the independent check.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from catdecay import _backend
from catdecay.cat_states import CatState
from catdecay.specfun import coherent_fock_vector, log_coherent_overlap
from catdecay.truncation import TAIL_TOLERANCE, TruncationWarning, truncation_rule

__all__ = [
    "DecayedCat",
    "FockDensityMatrix",
    "decay",
    "phase_factor",
    "density_matrix",
    "lindblad_evolve",
    "mixture_reference",
    "frobenius_distance",
    "fock_projector",
    "MAX_STEP",
]

MAX_STEP = 0.01


@dataclass(frozen=True)
class DecayedCat:
    cat: CatState
    tau: float

    def __post_init__(self):
        if not (self.tau >= 0.0 and math.isfinite(self.tau)):
            raise ValueError(f"tau must be finite and >= 0, got {self.tau}")

    @property
    def mu(self) -> float:
        return math.exp(-self.tau)

    @property
    def alpha(self) -> complex:
        return self.cat.alpha

    @property
    def components(self) -> tuple[complex, complex]:
        return self.cat.components

    def default_nmax(self) -> int:
        return truncation_rule(abs(self.cat.alpha))


def decay(cat: CatState, tau: float) -> DecayedCat:
    return DecayedCat(cat, float(tau))


class FockDensityMatrix:
    """Truncated density matrix in the number basis. Read-only after construction."""

    def __init__(self, entries):
        arr = np.array(entries, dtype=complex, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {arr.shape}")
        arr.flags.writeable = False
        self.entries = arr

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def purity(self) -> float:
        return float(np.vdot(self.entries, self.entries).real)

    def diagonal(self) -> np.ndarray:
        return self.entries.diagonal().real.copy()

    def expect(self, op: np.ndarray) -> complex:
        """Tr(rho op)."""
        return complex(np.einsum("ij,ji->", self.entries, op))

    def hermiticity_error(self) -> float:
        return float(np.abs(self.entries - self.entries.conj().T).max())

    def to_json(self) -> str:
        """``{"dim": N, "re": [[...]], "im": [[...]]}`` with 17 significant digits."""
        def rows(mat):
            return "[" + ",".join("[" + ",".join(f"{v:.17g}" for v in row) + "]" for row in mat) + "]"

        return f'{{"dim": {self.dim}, "re": {rows(self.entries.real)}, "im": {rows(self.entries.imag)}}}'

    @classmethod
    def from_json(cls, text: str) -> "FockDensityMatrix":
        obj = json.loads(text)
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float)
        if re.shape != (obj["dim"], obj["dim"]) or im.shape != re.shape:
            raise ValueError("JSON density matrix shape does not match 'dim'")
        return cls(re + 1j * im)

    def __repr__(self):
        return f"FockDensityMatrix(dim={self.dim}, trace={self.trace:.12g})"


def fock_projector(n: int, dim: int) -> FockDensityMatrix:
    m = np.zeros((dim, dim), dtype=complex)
    m[n, n] = 1.0
    return FockDensityMatrix(m)


def phase_factor(j: int, jprime: int, phi: float) -> float:
    """Relative phase attached to the |a_j><a_j'| dyad: 0, phi or -phi."""
    if j not in (1, 2) or jprime not in (1, 2):
        raise IndexError(f"component indices must be 1 or 2, got ({j}, {jprime})")
    if j == jprime:
        return 0.0
    return phi if j > jprime else -phi


def _check_trace(rho: np.ndarray, what: str) -> None:
    tail = abs(1.0 - float(np.trace(rho).real))
    if tail > TAIL_TOLERANCE:
        warnings.warn(f"{what}: trace deviates from 1 by {tail:.3e}; raise n_max", TruncationWarning, stacklevel=3)


def density_matrix(dc: DecayedCat, n_max: int | None = None) -> FockDensityMatrix:
    """Number-basis matrix of the damped cat, assembled from its four dyads."""
    if n_max is None:
        n_max = dc.default_nmax()
    cat = dc.cat
    mu = dc.mu
    comps = cat.components
    vecs = [coherent_fock_vector(math.sqrt(mu) * a, n_max) for a in comps]
    rho = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for j in (1, 2):
        for jp in (1, 2):
            if j == jp:
                phase = 1.0
            else:
                phase = cat.phase if j > jp else cat.phase.conjugate()
            # overlap^(1 - mu) on the principal branch; real positive for +-alpha
            weight = cat.norm_A * phase * cmath.exp((1.0 - mu) * log_coherent_overlap(comps[j - 1], comps[jp - 1]))
            rho += weight * np.outer(vecs[j - 1], vecs[jp - 1].conj())
    rho = 0.5 * (rho + rho.conj().T)
    _check_trace(rho, f"density_matrix(n_max={n_max})")
    return FockDensityMatrix(rho)


def lindblad_evolve(rho0: FockDensityMatrix, tau_final: float, steps: int) -> FockDensityMatrix:
    """Integrate the zero-temperature damping master equation with fixed-step RK4.

    Works in scaled time tau = gamma t, so the generator is
    a rho a^dag - (a^dag a rho + rho a^dag a) / 2. The result is re-symmetrized
    after every step.

    Raises:
        ValueError: for ``steps < 1`` or a step larger than 0.01.
    """
    steps = int(steps)
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if tau_final < 0:
        raise ValueError(f"tau_final must be >= 0, got {tau_final}")
    dt = tau_final / steps
    if dt > MAX_STEP:
        raise ValueError(f"step tau_final/steps = {dt:.4g} exceeds {MAX_STEP}; use at least {math.ceil(tau_final / MAX_STEP)} steps")
    if tau_final == 0:
        return rho0
    return FockDensityMatrix(_backend.kernels.damping_rk4(rho0.entries, dt, steps))


def mixture_reference(dc: DecayedCat, n_max: int | None = None) -> FockDensityMatrix:
    """Equal mixture of |alpha sqrt(mu)> and |-alpha sqrt(mu)>, the fully decohered cat."""
    if n_max is None:
        n_max = dc.default_nmax()
    amp = math.sqrt(dc.mu) * dc.alpha
    plus = coherent_fock_vector(amp, n_max)
    minus = coherent_fock_vector(-amp, n_max)
    rho = 0.5 * (np.outer(plus, plus.conj()) + np.outer(minus, minus.conj()))
    _check_trace(rho, f"mixture_reference(n_max={n_max})")
    return FockDensityMatrix(rho)


def frobenius_distance(a: FockDensityMatrix, b: FockDensityMatrix) -> float:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return float(np.linalg.norm(a.entries - b.entries))

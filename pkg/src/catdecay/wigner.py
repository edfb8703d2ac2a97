"""Wigner function of the damped cat, three independent ways.

* :func:`wigner_closed` -- two Gaussians plus a Gaussian-damped fringe term.
* :func:`wigner_series` -- double sum over normally ordered moments with an
  associated-Laguerre kernel.
* :func:`wigner_parity_oracle` -- displaced parity of a number-basis density
  matrix; knows nothing about cat states.

Grids are rasterized from the closed form.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

from catdecay import _backend
from catdecay.dynamics import DecayedCat, FockDensityMatrix
from catdecay.observables import interference_decay_factor, moment_terms
from catdecay.truncation import TAIL_TOLERANCE, TruncationWarning

__all__ = [
    "PhasePoint",
    "GridSpec",
    "WignerGrid",
    "SeriesNonConvergence",
    "wigner_closed",
    "wigner_series",
    "wigner_series_adaptive",
    "wigner_parity_oracle",
    "wigner_grid",
    "grid_integral",
    "negativity_volume",
    "interference_contrast",
    "mixture_peaks",
]

W_BOUND = 2.0 / math.pi
SERIES_CAP = 200


class SeriesNonConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class PhasePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"phase point must be finite, got ({self.x}, {self.y})")

    @property
    def beta(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, beta: complex) -> "PhasePoint":
        return cls(beta.real, beta.imag)


PointLike = Union[PhasePoint, complex, float, np.ndarray]


def _as_beta(p: PointLike):
    if isinstance(p, PhasePoint):
        return p.beta
    if isinstance(p, np.ndarray):
        return p.astype(complex)
    return complex(p)


def wigner_closed(dc: DecayedCat, p: PointLike):
    """Closed-form W(beta); accepts a point, a complex number or an array of them.

    For amplitude alpha = r e^{i theta} the state is the real-amplitude one
    rotated by theta, so beta is rotated back before evaluating

        (2A/pi) [g(beta - b) + g(beta + b) + 2 f cos(phi + 4 b Im beta) g(beta)],

    with b = r sqrt(mu) and g(z) = exp(-2|z|^2). For phi = 0 or pi the fringe
    factor is cos(phi) cos(4 b Im beta).
    """
    beta = _as_beta(p)
    cat = dc.cat
    r = abs(cat.alpha)
    rot = cmath.exp(-1j * cmath.phase(cat.alpha)) if r > 0 else 1.0
    z = beta * rot
    b = r * math.sqrt(dc.mu)
    f = interference_decay_factor(r, dc.tau)
    zr, zi = np.real(z), np.imag(z)
    g_minus = np.exp(-2.0 * ((zr - b) ** 2 + zi**2))
    g_plus = np.exp(-2.0 * ((zr + b) ** 2 + zi**2))
    g0 = np.exp(-2.0 * (zr**2 + zi**2))
    fringe = 2.0 * f * np.cos(cat.phi + 4.0 * b * zi) * g0
    w = 2.0 * cat.norm_A / math.pi * (g_minus + g_plus + fringe)
    return float(w) if np.ndim(w) == 0 else w


def _series_coefficients(dc: DecayedCat):
    """Moments as sum_t w_t p_t^n q_t^m, one term per dyad |a_j><a_j'|."""
    s = math.sqrt(dc.mu)
    weights, pn, qm = [], [], []
    for w, a, b in moment_terms(dc):
        weights.append(w)
        pn.append(s * a)
        qm.append(s * b.conjugate())
    return np.array(weights), np.array(pn), np.array(qm)


def wigner_series(dc: DecayedCat, p: PointLike, cutoff: int) -> float:
    """Partial sum of the moment/Laguerre double series with n, m <= cutoff.

    Terms are grouped by d = n - m. The d < 0 half is the complex conjugate of
    the d > 0 half, which avoids dividing by conj(beta)^|d| at the origin.
    """
    cutoff = int(cutoff)
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    w, pn, qm = _series_coefficients(dc)
    return float(_backend.kernels.series_wigner(w, pn, qm, _as_beta(p), cutoff))


def wigner_series_adaptive(
    dc: DecayedCat, p: PointLike, start: int = 20, tol: float = 1e-9, cap: int = SERIES_CAP
) -> tuple[float, int]:
    """Double the cutoff until successive partial sums differ by less than ``tol``.

    Returns (value, cutoff used).

    Raises:
        SeriesNonConvergence: if the cap is reached first.
    """
    c = max(1, int(start))
    prev = wigner_series(dc, p, c)
    while c < cap:
        c = min(2 * c, cap)
        cur = wigner_series(dc, p, c)
        if abs(cur - prev) < tol:
            return cur, c
        prev = cur
    raise SeriesNonConvergence(f"series at beta={_as_beta(p)} not converged to {tol} by cutoff {cap}")


def wigner_parity_oracle(rho: FockDensityMatrix, p: PointLike) -> float:
    """W(beta) = (2/pi) Tr[rho D(beta) Pi D(beta)^dag], Pi the photon parity.

    D(beta) Pi D(beta)^dag = D(2 beta) Pi, so the matrix elements are those
    of a single displacement and the sum is exact for the truncated rho.
    Warns when rho itself has lost more than 1e-10 of its trace to truncation.
    """
    tail = abs(1.0 - rho.trace)
    if tail > TAIL_TOLERANCE:
        warnings.warn(f"density matrix trace deficit {tail:.3e}; Wigner oracle is truncated", TruncationWarning, stacklevel=2)
    return float(_backend.kernels.parity_wigner(rho.entries, _as_beta(p)))


@dataclass(frozen=True)
class GridSpec:
    x_min: float = -4.0
    x_max: float = 4.0
    nx: int = 129
    y_min: float = -4.0
    y_max: float = 4.0
    ny: int = 129

    def __post_init__(self):
        for v in (self.x_min, self.x_max, self.y_min, self.y_max):
            if not math.isfinite(v):
                raise ValueError("grid bounds must be finite")
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"grid needs at least 2 points per axis, got {self.nx}x{self.ny}")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("grid bounds must be increasing")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)


@dataclass(frozen=True)
class WignerGrid:
    """W sampled on a uniform raster; ``values[iy, ix]``."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.spec.ny, self.spec.nx):
            raise ValueError(f"values shape {self.values.shape} != ({self.spec.ny}, {self.spec.nx})")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid values must be finite")
        self.values.flags.writeable = False

    @property
    def dx(self) -> float:
        return (self.spec.x_max - self.spec.x_min) / (self.spec.nx - 1)

    @property
    def dy(self) -> float:
        return (self.spec.y_max - self.spec.y_min) / (self.spec.ny - 1)

    def weights(self) -> np.ndarray:
        """Trapezoid cell weights; sum to the rectangle's area."""
        wx = np.full(self.spec.nx, self.dx)
        wx[[0, -1]] *= 0.5
        wy = np.full(self.spec.ny, self.dy)
        wy[[0, -1]] *= 0.5
        return np.outer(wy, wx)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "y", "w"])
        xs, ys = self.spec.xs, self.spec.ys
        for iy, y in enumerate(ys):
            for ix, x in enumerate(xs):
                writer.writerow([f"{x:.17g}", f"{y:.17g}", f"{self.values[iy, ix]:.17g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        s = self.spec
        rows = ",".join("[" + ",".join(f"{v:.17g}" for v in row) + "]" for row in self.values)
        bounds = ",".join(f"{v:.17g}" for v in (s.x_min, s.x_max, s.y_min, s.y_max))
        return f'{{"bounds": [{bounds}], "nx": {s.nx}, "ny": {s.ny}, "values": [{rows}]}}'

    @classmethod
    def from_json(cls, text: str) -> "WignerGrid":
        obj = json.loads(text)
        x0, x1, y0, y1 = obj["bounds"]
        spec = GridSpec(x0, x1, obj["nx"], y0, y1, obj["ny"])
        return cls(spec, np.array(obj["values"], dtype=float))


def wigner_grid(dc: DecayedCat, spec: GridSpec | None = None) -> WignerGrid:
    spec = spec or GridSpec()
    x, y = np.meshgrid(spec.xs, spec.ys)
    return WignerGrid(spec, np.asarray(wigner_closed(dc, x + 1j * y), dtype=float))


def grid_integral(g: WignerGrid) -> float:
    return float(np.sum(g.values * g.weights()))


def negativity_volume(g: WignerGrid) -> float:
    """Integrated negative part of W over the grid."""
    return float(np.sum(np.maximum(0.0, -g.values) * g.weights()))


def interference_contrast(dc: DecayedCat) -> float:
    """Fringe amplitude at the origin relative to a mixture peak.

    2 f |cos phi| / (1 + exp(-8 mu |alpha|^2)), i.e. the fringe coefficient of
    the closed form over the mixture part evaluated at beta = alpha sqrt(mu).
    """
    r2 = abs(dc.alpha) ** 2
    f = interference_decay_factor(abs(dc.alpha), dc.tau)
    return 2.0 * f * abs(dc.cat.phase.real) / (1.0 + math.exp(-8.0 * dc.mu * r2))


def mixture_peaks(g: WignerGrid) -> tuple[tuple[float, float], tuple[float, float]]:
    """Location of the largest grid value in the x < 0 and x >= 0 half-planes."""
    xs, ys = g.spec.xs, g.spec.ys
    out = []
    for mask in (xs < 0, xs >= 0):
        sub = np.where(mask[None, :], g.values, -np.inf)
        iy, ix = np.unravel_index(np.argmax(sub), sub.shape)
        out.append((float(xs[ix]), float(ys[iy])))
    return out[0], out[1]

"""Cross-checks between the closed forms and the number-basis oracles.

Each check pairs an analytic result with a computation that does not use it:
exact density matrix against RK4 integration of the master equation, P(n)
against the matrix diagonal, squeezing against matrix variances, and the
Wigner closed form against both the Laguerre series and displaced parity.
"""

from __future__ import annotations

import itertools
import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from catdecay.cat_states import new_cat
from catdecay.dynamics import DecayedCat, decay, density_matrix, frobenius_distance, lindblad_evolve
from catdecay.observables import (
    normally_ordered_moment,
    photon_number_distribution,
    squeezing_ecs_closed,
    squeezing_factors,
)
from catdecay.truncation import TruncationWarning
from catdecay.wigner import (
    GridSpec,
    grid_integral,
    wigner_closed,
    wigner_grid,
    wigner_parity_oracle,
    wigner_series_adaptive,
)

__all__ = ["CheckResult", "GROUPS", "run_battery", "battery_states", "battery_points", "ladder_ops"]

ALPHAS = (0.5, 1.0, 2.0)
PHIS = (0.0, math.pi, 0.5 * math.pi)
DYNAMICS_TAUS = (0.1, 0.3, 1.0)
WIGNER_TAUS = (0.0, 0.3, 1.0)
RK4_STEP = 1e-3
POINT_SEED = 20020325
GROUPS = ("dynamics", "pnd", "squeezing", "wigner")


@dataclass
class CheckResult:
    group: str
    name: str
    passed: bool
    worst: float
    tolerance: float
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"[{status}] {self.group}/{self.name}: worst={self.worst:.3e} tol={self.tolerance:.1e} ({self.seconds:.2f}s)"
        for n in self.notes:
            msg += f"\n        {n}"
        return msg


def battery_states(taus=WIGNER_TAUS) -> list[DecayedCat]:
    return [decay(new_cat(a, phi), tau) for a, phi, tau in itertools.product(ALPHAS, PHIS, taus)]


def battery_points(n: int = 25, seed: int = POINT_SEED) -> np.ndarray:
    """Fixed pseudo-random phase-space points in [-4, 4]^2, as complex numbers."""
    xy = np.random.default_rng(seed).uniform(-4.0, 4.0, size=(n, 2))
    return xy[:, 0] + 1j * xy[:, 1]


def ladder_ops(dim: int) -> np.ndarray:
    """Truncated annihilation operator."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


class _Check:
    def __init__(self, group, name, tol):
        self.result = CheckResult(group, name, True, 0.0, tol)
        self._t0 = time.perf_counter()
        self._ctx = warnings.catch_warnings(record=True)

    def __enter__(self):
        self._caught = self._ctx.__enter__()
        warnings.simplefilter("always", TruncationWarning)
        return self

    def record(self, err: float, label: str = "") -> None:
        err = float(err)
        if not err <= self.result.worst:
            self.result.worst = err if math.isfinite(err) else math.inf
        if not err < self.result.tolerance:
            self.result.passed = False
            if label and len(self.result.notes) < 5:
                self.result.notes.append(f"{label}: error {err:.3e}")

    def __exit__(self, exc_type, exc, tb):
        self._ctx.__exit__(exc_type, exc, tb)
        trunc = {str(w.message) for w in self._caught if issubclass(w.category, TruncationWarning)}
        if trunc:
            self.result.passed = False
            self.result.notes.extend(f"truncation: {m}" for m in sorted(trunc)[:3])
        if exc is not None:
            self.result.passed = False
            self.result.notes.append(f"{type(exc).__name__}: {exc}")
        self.result.seconds = time.perf_counter() - self._t0
        return exc is not None and isinstance(exc, ArithmeticError)


def _label(dc: DecayedCat) -> str:
    return f"alpha={dc.alpha.real:g} phi={dc.cat.phi:.4g} tau={dc.tau:g}"


def _dynamics(n_max):
    out = []
    with _Check("dynamics", "rk4-vs-exact", 1e-8) as chk:
        for a, phi in itertools.product(ALPHAS, PHIS):
            cat = new_cat(a, phi)
            rho0 = density_matrix(decay(cat, 0.0), n_max)
            for tau in DYNAMICS_TAUS:
                evolved = lindblad_evolve(rho0, tau, round(tau / RK4_STEP))
                exact = density_matrix(decay(cat, tau), n_max)
                chk.record(frobenius_distance(evolved, exact), _label(decay(cat, tau)))
    out.append(chk.result)

    with _Check("dynamics", "trace-hermiticity", 1e-10) as chk:
        for dc in battery_states(DYNAMICS_TAUS):
            rho = density_matrix(dc, n_max)
            chk.record(max(abs(rho.trace - 1.0), rho.hermiticity_error()), _label(dc))
    out.append(chk.result)

    with _Check("dynamics", "energy-decay", 1e-10) as chk:
        for dc in battery_states(DYNAMICS_TAUS):
            rho = density_matrix(dc, n_max)
            rho0 = density_matrix(decay(dc.cat, 0.0), n_max)
            num = np.diag(np.arange(rho.dim, dtype=float))
            chk.record(abs(rho.expect(num) - dc.mu * rho0.expect(num)), _label(dc))
    out.append(chk.result)
    return out


def _pnd(n_max):
    out = []
    states = battery_states(DYNAMICS_TAUS + (0.0,))
    with _Check("pnd", "closed-vs-diagonal", 1e-10) as chk:
        for dc in states:
            p = photon_number_distribution(dc, n_max)
            diag = density_matrix(dc, n_max).diagonal()
            chk.record(np.abs(p.probs - diag).max(), _label(dc))
    out.append(chk.result)

    with _Check("pnd", "normalization", 1e-10) as chk:
        for dc in states:
            chk.record(abs(photon_number_distribution(dc, n_max).total - 1.0), _label(dc))
    out.append(chk.result)

    with _Check("pnd", "yss-poisson", 1e-12) as chk:
        for dc in states:
            if dc.cat.phase.real != 0.0:
                continue
            p = photon_number_distribution(dc, n_max)
            lam = dc.mu * abs(dc.alpha) ** 2
            n = np.arange(p.n_max + 1)
            poisson = np.exp(n * math.log(lam) - lam - np.array([math.lgamma(k + 1.0) for k in n]))
            chk.record(np.abs(p.probs - poisson).max(), _label(dc))
    out.append(chk.result)
    return out


def _squeezing(n_max):
    out = []
    with _Check("squeezing", "moments-vs-fock", 1e-9) as chk:
        for dc in battery_states(DYNAMICS_TAUS + (0.0,)):
            rho = density_matrix(dc, n_max)
            a = ladder_ops(rho.dim)
            X = 0.5 * (a + a.conj().T)
            Y = (a - a.conj().T) / 2j
            s1 = 4.0 * (rho.expect(X @ X).real - rho.expect(X).real ** 2) - 1.0
            s2 = 4.0 * (rho.expect(Y @ Y).real - rho.expect(Y).real ** 2) - 1.0
            sf = squeezing_factors(dc)
            chk.record(max(abs(sf.s1 - s1), abs(sf.s2 - s2)), _label(dc))
            m11 = rho.expect(a.conj().T @ a)
            chk.record(abs(normally_ordered_moment(dc, 1, 1) - m11), _label(dc) + " <a^dag a>")
    out.append(chk.result)

    with _Check("squeezing", "ecs-closed-vs-moments", 1e-12) as chk:
        for a, tau in itertools.product((0.5, 1.0, 1.5, 2.0), np.linspace(0.0, 3.0, 31)):
            closed = squeezing_ecs_closed(a, tau)
            general = squeezing_factors(decay(new_cat(a, 0.0), tau))
            chk.record(max(abs(closed.s1 - general.s1), abs(closed.s2 - general.s2)), f"alpha={a} tau={tau:g}")
    out.append(chk.result)
    return out


def _wigner(n_max):
    out = []
    pts = battery_points()
    states = battery_states()
    series_chk = _Check("wigner", "series-vs-closed", 1e-8)
    parity_chk = _Check("wigner", "parity-vs-closed", 1e-8)
    with series_chk:
        for dc in states:
            for b in pts:
                value, _ = wigner_series_adaptive(dc, b)
                series_chk.record(abs(value - wigner_closed(dc, b)), f"{_label(dc)} beta={b:.3f}")
    out.append(series_chk.result)
    with parity_chk:
        for dc in states:
            rho = density_matrix(dc, n_max)
            for b in pts:
                parity_chk.record(abs(wigner_parity_oracle(rho, b) - wigner_closed(dc, b)), f"{_label(dc)} beta={b:.3f}")
    out.append(parity_chk.result)

    with _Check("wigner", "grid-normalization", 5e-3) as chk:
        spec = GridSpec()
        for dc in states:
            chk.record(abs(grid_integral(wigner_grid(dc, spec)) - 1.0), _label(dc))
    out.append(chk.result)
    return out


_RUNNERS = {"dynamics": _dynamics, "pnd": _pnd, "squeezing": _squeezing, "wigner": _wigner}


def run_battery(only=None, n_max: int | None = None) -> list[CheckResult]:
    """Run the oracle battery.

    Args:
        only: iterable of group names to restrict to; default runs all of
            ``GROUPS``.
        n_max: fixed Fock cutoff for every matrix; ``None`` applies the
            truncation rule per state.
    """
    groups = GROUPS if not only else tuple(only)
    unknown = set(groups) - set(GROUPS)
    if unknown:
        raise ValueError(f"unknown check group(s): {sorted(unknown)}")
    results = []
    for g in groups:
        results.extend(_RUNNERS[g](n_max))
    return results

"""Pure numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or when ``CATDECAY_PURE_PYTHON`` is set.
"""

import math

import numpy as np


def damping_rhs(rho):
    """d rho / d tau = a rho a^dag - (n rho + rho n) / 2 in the number basis."""
    dim = rho.shape[0]
    k = np.arange(dim, dtype=float)
    out = -0.5 * (k[:, None] + k[None, :]) * rho
    s = np.sqrt(k[1:])
    out[:-1, :-1] += s[:, None] * s[None, :] * rho[1:, 1:]
    return out


def damping_rk4(rho0, dt, steps):
    rho = np.array(rho0, dtype=complex, copy=True)
    for _ in range(int(steps)):
        k1 = damping_rhs(rho)
        k2 = damping_rhs(rho + 0.5 * dt * k1)
        k3 = damping_rhs(rho + 0.5 * dt * k2)
        k4 = damping_rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
    return rho


def series_wigner(weights, amp_n, amp_m, beta, cutoff):
    """Normally-ordered Laguerre series for W(beta).

    The moments are <a^dag^m a^n> = sum_t weights[t] amp_n[t]^n amp_m[t]^m.
    Terms with n < m are folded onto their n > m partners by conjugate
    symmetry, so no negative power of conj(beta) is ever formed.
    """
    cutoff = int(cutoff)
    weights = np.asarray(weights, dtype=complex)
    p = np.asarray(amp_n, dtype=complex)
    q = np.asarray(amp_m, dtype=complex)
    beta = complex(beta)
    x = 2.0 * abs(beta) ** 2
    d = np.arange(cutoff + 1)

    # coef[t, d] = 2 w_t (2 p_t conj(beta))^d / d!, advanced in m below
    step_d = 2.0 * p[:, None] * beta.conjugate() / np.maximum(d, 1)[None, :]
    step_d[:, 0] = 1.0
    coef = 2.0 * weights[:, None] * np.cumprod(step_d, axis=1)
    u = -2.0 * p * q

    lag_prev = np.zeros(cutoff + 1)
    lag = np.ones(cutoff + 1)
    total = np.zeros(cutoff + 1, dtype=complex)
    for m in range(cutoff + 1):
        nd = cutoff - m + 1
        total[:nd] += coef[:, :nd].sum(axis=0) * lag[:nd]
        if m == cutoff:
            break
        # L_{m+1}^d from L_m^d and L_{m-1}^d
        lag_next = ((2 * m + 1 + d - x) * lag - (m + d) * lag_prev) / (m + 1)
        lag_prev, lag = lag, lag_next
        coef = coef * (u[:, None] / (m + d + 1)[None, :])
    s = total[0].real + 2.0 * total[1:].real.sum()
    return math.exp(-x) / math.pi * s


def parity_wigner(rho, beta):
    """(2/pi) sum_mn rho_mn (-1)^m <n|D(2 beta)|m>, i.e. the displaced parity."""
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    gamma = 2.0 * complex(beta)
    x = abs(gamma) ** 2
    d = np.arange(dim)
    lf = np.array([math.lgamma(k + 1.0) for k in range(2 * dim)])
    if gamma == 0:
        log_g, up, down = -math.inf, np.zeros(dim, complex), np.zeros(dim, complex)
        up[0] = down[0] = 1.0
    else:
        log_g = math.log(abs(gamma))
        ph = gamma / abs(gamma)
        up = ph ** d
        down = (-ph.conjugate()) ** d

    lag_prev = np.zeros(dim)
    lag = np.ones(dim)
    acc = 0j
    for m in range(dim):
        nd = dim - m
        dd = d[:nd]
        with np.errstate(invalid="ignore"):
            logpref = 0.5 * (lf[m] - lf[m + dd]) + np.where(dd > 0, dd * log_g, 0.0) - 0.5 * x
        s = np.exp(logpref) * lag[:nd]
        sign = -1.0 if m % 2 else 1.0
        # n = m + d: rho[m, m+d] <m+d|D|m>
        acc += sign * np.sum(rho[m, m:m + nd] * up[:nd] * s)
        # m_row = m + d, n = m: rho[m+d, m] (-1)^(m+d) <m|D|m+d>, d >= 1
        if nd > 1:
            sgn = sign * np.where(dd[1:] % 2, -1.0, 1.0)
            acc += np.sum(rho[m + 1:m + nd, m] * sgn * down[1:nd] * s[1:])
        if m == dim - 1:
            break
        lag_next = ((2 * m + 1 + d - x) * lag - (m + d) * lag_prev) / (m + 1)
        lag_prev, lag = lag, lag_next
    return 2.0 / math.pi * acc.real

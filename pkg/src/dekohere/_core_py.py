"""Pure-numpy implementation of the hot numerical kernels.

This module is the reference backend; ``_core`` (Cython) implements the same
surface with identical quadrature rules so results agree to rounding.  All
functions work on an integer-coded noise model:

    kind 0  Ornstein-Uhlenbeck      p1 = tau
    kind 1  spin-boson power law    p1 = spectral exponent p, p2 = 1/Lambda_UV
    kind 2  1/f with IR cutoff      p1 = 1/Lambda_UV,       p2 = Lambda_IR

``scale`` multiplies the correlation function linearly (0 switches the bath
off).  Renormalized integrals use quadrature grids aligned to the half-cycle
boundaries k*T_c/2 so the switching function is constant on every subinterval;
smooth-envelope history integrals use composite 2x16 Gauss-Legendre panels per
half-cycle, which resolves the short-time kernel peak (width 1/Lambda) at the
largest cycle times used here.
"""

import math

import numpy as np
from scipy.special import exp1

BACKEND_NAME = "python"

# 16-point Gauss-Legendre nodes/weights on [-1, 1]; literals shared with the
# compiled backend so the two produce bit-comparable quadratures.
GL16_X = (
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.755404408355003, -0.6178762444026438, -0.45801677765722737,
    -0.2816035507792589, -0.09501250983763745, 0.09501250983763745,
    0.2816035507792589, 0.45801677765722737, 0.6178762444026438,
    0.755404408355003, 0.8656312023878318, 0.9445750230732326,
    0.9894009349916499,
)
GL16_W = (
    0.027152459411754037, 0.062253523938647706, 0.09515851168249259,
    0.12462897125553403, 0.14959598881657676, 0.16915651939500262,
    0.1826034150449236, 0.18945061045506859, 0.18945061045506859,
    0.1826034150449236, 0.16915651939500262, 0.14959598881657676,
    0.12462897125553403, 0.09515851168249259, 0.062253523938647706,
    0.027152459411754037,
)

PANELS_PER_SEGMENT = 2
_NODES_PER_SEGMENT = PANELS_PER_SEGMENT * 16

# unit nodes/weights on [0, 1], 2 panels x 16 points
_UX = np.concatenate([(np.asarray(GL16_X) + 1.0) / 4.0 + k * 0.5
                      for k in range(PANELS_PER_SEGMENT)])
_UW = np.concatenate([np.asarray(GL16_W) / 4.0
                      for _ in range(PANELS_PER_SEGMENT)])

_BOUNDARY_EPS = 1e-9


def _segment_count(t, half):
    """Number of complete half-cycles before t (robust at boundaries)."""
    return int(math.floor(t / half + _BOUNDARY_EPS))


def kernel_values(kind, p1, p2, scale, dts):
    """Correlation function alpha(dt) = mu - i*nu on an array of time lags."""
    u = np.asarray(dts, dtype=float)
    if kind == 0:
        out = np.exp(-np.abs(u) / p1) / (2.0 * p1) + 0j
    elif kind == 1:
        p = int(p1)
        out = math.gamma(p + 1) / (p2 + 1j * u) ** (p + 1)
    else:
        out = exp1(p2 * (p1 + 1j * u))
    return scale * out


def kernel_antiderivative(kind, p1, p2, scale, xs):
    """M(x) = integral_0^x alpha(u) du for x >= 0 (closed forms)."""
    x = np.asarray(xs, dtype=float)
    if kind == 0:
        out = (1.0 - np.exp(-x / p1)) / 2.0 + 0j
    elif kind == 1:
        p = int(p1)
        out = math.gamma(p + 1) * 1j * ((p2 + 1j * x) ** (-p) - p2 ** (-p)) / p
    else:
        c = p2
        w = c * (p1 + 1j * x)
        w0 = complex(c * p1)
        f = lambda z: z * exp1(z) - np.exp(-z)
        out = (-1j / c) * (f(w) - f(w0))
    out = np.where(x == 0.0, 0.0 + 0j, out)  # cancellation-exact at the origin
    return scale * out


def bb_renormalized(kind, p1, p2, scale, ts, t_c):
    """integral_0^t alpha(t, s) f(s) ds for every t in ts.

    Uses the half-cycle antiderivative sum
    M(t) + 2 * sum_j (-1)^j M(t - j*T_c/2), exact for all three model families.
    """
    ts = np.asarray(ts, dtype=float)
    half = t_c / 2.0
    out = kernel_antiderivative(kind, p1, p2, scale, ts)
    if len(ts) == 0:
        return out
    m_max = _segment_count(float(ts[-1]), half)
    for j in range(1, m_max + 1):
        shifted = ts - j * half
        mask = shifted > -half * _BOUNDARY_EPS
        x = np.where(mask, np.maximum(shifted, 0.0), 0.0)
        term = kernel_antiderivative(kind, p1, p2, scale, x)
        out = out + 2.0 * (-1) ** j * np.where(mask, term, 0.0)
    return out


def _phase(env_b, env_c, env_k, s):
    """Control phase A(s) = b*s + sum_m c_m sin(k_m s)."""
    a = env_b * s
    for cm, km in zip(env_c, env_k):
        a = a + cm * np.sin(km * s)
    return a


def phase_history_pair(kind, p1, p2, scale, ts, t_c, env_b, env_c, env_k):
    """(h+, h-) with h+-(t) = integral_0^t alpha(t, s) exp(+-2i A(s)) ds.

    Smooth envelopes only; A(s) = env_b*s + sum c_m sin(k_m s).
    """
    ts = np.asarray(ts, dtype=float)
    env_c = np.asarray(env_c, dtype=float)
    env_k = np.asarray(env_k, dtype=float)
    n = len(ts)
    hp = np.zeros(n, dtype=complex)
    hm = np.zeros(n, dtype=complex)
    if n == 0:
        return hp, hm
    half = t_c / 2.0
    m_max = _segment_count(float(ts[-1]), half)

    # full-segment nodes are shared by every t: positions, weights, phases
    if m_max > 0:
        seg_starts = np.arange(m_max) * half
        s_full = (seg_starts[:, None] + half * _UX[None, :]).ravel()
        w_full = np.broadcast_to(half * _UW, (m_max, _NODES_PER_SEGMENT)).ravel()
        a_full = _phase(env_b, env_c, env_k, s_full)
        pw_plus = w_full * np.exp(2j * a_full)
        pw_minus = w_full * np.exp(-2j * a_full)

    m_of_t = np.minimum(np.floor(ts / half + _BOUNDARY_EPS).astype(int), m_max)
    for i in range(n):
        t = ts[i]
        m = m_of_t[i]
        if m > 0:
            k = m * _NODES_PER_SEGMENT
            av = kernel_values(kind, p1, p2, scale, t - s_full[:k])
            hp[i] = np.dot(av, pw_plus[:k])
            hm[i] = np.dot(av, pw_minus[:k])

    # partial last segment [m*half, t], vectorized across all t at once
    t0 = m_of_t * half
    length = np.maximum(ts - t0, 0.0)
    has_part = length > half * _BOUNDARY_EPS
    if np.any(has_part):
        idx = np.nonzero(has_part)[0]
        s_part = t0[idx, None] + length[idx, None] * _UX[None, :]
        w_part = length[idx, None] * _UW[None, :]
        a_part = _phase(env_b, env_c, env_k, s_part)
        av = kernel_values(kind, p1, p2, scale, ts[idx, None] - s_part)
        hp[idx] += np.sum(av * w_part * np.exp(2j * a_part), axis=1)
        hm[idx] += np.sum(av * w_part * np.exp(-2j * a_part), axis=1)
    return hp, hm

"""Time-local master-equation integration for all six scenario families.

One fixed-step RK4 core integrates d rho~/dt = C(t)[rho~] in the interaction
picture, with the scalar coefficient set C(t) chosen by (coupling, control):

* dephasing, free:        d rho01/dt = -4 K_mu(t) rho01
* dephasing, bang-bang:   d rho01/dt = -4 f(t) F_mu(t) rho01
* dephasing, continuous:  d Re rho01/dt = -2 L_s(t) Re rho01 + L_c(t) (rho11-rho00),
                          L_s = 2 sin(2A(t)) int mu sin(2A(s)),
                          L_c = 2 sin(2A(t)) int nu cos(2A(s));
                          populations and Im rho01 are frozen by the generator.
* lowering, free:         d rho01/dt = -(K_mu + i K_nu) rho01,
                          d rho11/dt = -2 K_mu rho11
* lowering, bang-bang:    same with f(t)-signed renormalized integrals
* lowering, continuous:   rate r(t) = (mu~ + i nu~)/4 = conj(e^{2iA(t)} h_-(t));
                          d rho01/dt = -r rho01, d rho11/dt = -2 Re(r) rho11

K is the free kernel integral, F the bang-bang renormalized integral, h_- the
phase-weighted history integral.  The time grid is locked to half-cycle
boundaries (h must divide T_c/2), so every RK4 step lies inside one half
cycle and f is constant on it; coefficient arrays are precomputed on the
half-step grid, which keeps the stepping 4th order.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import kernel as _kernel
from .errors import ConfigurationError, ParameterError
from .pulse import (BangBangEnvelope, LinearEnvelope, ParametricEnvelope,
                    SwitchingFunction, envelope_A, eval_f,
                    switch_value_for_step)

_COMMENSURATE_RTOL = 1e-9


class CouplingKind(enum.Enum):
    """Which system operator couples to the bath."""

    DEPHASING = "sigma_z"
    LOWERING = "sigma_minus"


@dataclass(frozen=True)
class NoControl:
    pass


@dataclass(frozen=True)
class BangBangControl:
    t_c: float

    def __post_init__(self):
        if not (self.t_c > 0):
            raise ParameterError(f"cycle period must be positive, got {self.t_c}")


@dataclass(frozen=True)
class ContinuousControl:
    envelope: Union[LinearEnvelope, ParametricEnvelope]

    def __post_init__(self):
        if isinstance(self.envelope, BangBangEnvelope):
            raise ConfigurationError(
                "control.envelope",
                "ideal staircase envelopes are the bang-bang control type; use it directly")

    @property
    def t_c(self) -> float:
        return self.envelope.t_c


PulseProgram = Union[NoControl, BangBangControl, ContinuousControl]


@dataclass(frozen=True)
class QubitState:
    """2x2 density matrix; rho10 is stored implicitly as conj(rho01)."""

    rho00: float
    rho11: float
    rho01: complex

    def __post_init__(self):
        if abs(self.rho00 + self.rho11 - 1.0) > 1e-10:
            raise ParameterError(
                f"populations must sum to 1, got {self.rho00 + self.rho11}")
        if self.rho00 < -1e-12 or self.rho11 < -1e-12:
            raise ParameterError("populations must be non-negative")

    @classmethod
    def plus(cls) -> "QubitState":
        """|+><+|, the initial state used throughout."""
        return cls(0.5, 0.5, 0.5 + 0j)

    @property
    def positivity_defect(self) -> float:
        """rho00*rho11 - |rho01|^2; negative values signal positivity loss."""
        return self.rho00 * self.rho11 - abs(self.rho01) ** 2


@dataclass
class Trajectory:
    """Uniform time grid with states and the effective decay coefficients."""

    times: np.ndarray
    rho00: np.ndarray
    rho01: np.ndarray
    coeff_mu: np.ndarray
    coeff_nu: np.ndarray
    model: object
    pulse: object
    coupling: CouplingKind
    positivity_min: float = field(default=0.0)

    def __post_init__(self):
        if not (len(self.times) == len(self.rho00) == len(self.rho01)):
            raise ParameterError("trajectory arrays must have equal length")

    @property
    def rho11(self) -> np.ndarray:
        return 1.0 - self.rho00

    def state_at(self, i: int) -> QubitState:
        return QubitState(float(self.rho00[i]), float(1.0 - self.rho00[i]),
                          complex(self.rho01[i]))

    @property
    def positivity_ok(self) -> bool:
        return self.positivity_min >= -1e-8


def _tc_of(pulse) -> Optional[float]:
    return None if isinstance(pulse, NoControl) else pulse.t_c


def _check_grid(h: float, t_final: float, pulse) -> int:
    if not (h > 0):
        raise ConfigurationError("grid.h", f"step must be positive, got {h}")
    if not (t_final > 0):
        raise ConfigurationError("grid.t_final", f"final time must be positive, got {t_final}")
    n = t_final / h
    if abs(n - round(n)) > _COMMENSURATE_RTOL * max(n, 1.0):
        raise ConfigurationError("grid.h", f"step {h} does not divide t_final {t_final}")
    t_c = _tc_of(pulse)
    if t_c is not None:
        m = (t_c / 2.0) / h
        if abs(m - round(m)) > _COMMENSURATE_RTOL * max(m, 1.0):
            raise ConfigurationError(
                "grid.h", f"step {h} does not divide the half cycle {t_c / 2.0}")
    return int(round(n))


def _coefficient_arrays(model, pulse, coupling, ts):
    """Scalar coefficient set on the half-step grid.

    Returns (c01, cpop, lam_s, lam_c, rec_mu, rec_nu, use_f):
    c01 complex rate on rho01, cpop real rate on rho11 (lowering only),
    lam_s/lam_c the dephasing-continuous pair, rec_* the recorded channels.
    """
    if isinstance(pulse, NoControl):
        m_alpha = _kernel.kernel_antiderivative_array(model, ts)
        k_mu, k_nu = m_alpha.real, -m_alpha.imag
        rec_mu, rec_nu = k_mu + 0j, k_nu + 0j
        if coupling is CouplingKind.DEPHASING:
            return 4.0 * k_mu + 0j, None, None, None, rec_mu, rec_nu, False
        return k_mu + 1j * k_nu, 2.0 * k_mu, None, None, rec_mu, rec_nu, False

    if isinstance(pulse, BangBangControl):
        fa = _kernel.renormalized_alpha_bb(model, ts, pulse.t_c)
        f_mu, f_nu = fa.real, -fa.imag
        rec_mu, rec_nu = f_mu + 0j, f_nu + 0j
        if coupling is CouplingKind.DEPHASING:
            return 4.0 * f_mu + 0j, None, None, None, rec_mu, rec_nu, True
        return f_mu + 1j * f_nu, 2.0 * f_mu, None, None, rec_mu, rec_nu, True

    env = pulse.envelope
    hp, hm = _kernel.phase_history_pair(model, ts, pulse.t_c, env)
    a_t = env.phase(ts)
    if coupling is CouplingKind.DEPHASING:
        int_mu_e = 0.5 * (hp + np.conj(hm))
        int_nu_e = (np.conj(hm) - hp) / 2j
        lam_s = 2.0 * np.sin(2.0 * a_t) * int_mu_e.imag
        lam_c = 2.0 * np.sin(2.0 * a_t) * int_nu_e.real
        return None, None, lam_s, lam_c, lam_s + 0j, lam_c + 0j, False
    rate = np.conj(np.exp(2j * a_t) * hm)
    phase = np.exp(-2j * a_t)
    int_mu_e = 0.5 * (hp + np.conj(hm))
    int_nu_e = (np.conj(hm) - hp) / 2j
    mu_tilde = 4.0 * phase * int_mu_e
    nu_tilde = 4.0 * phase * int_nu_e
    return rate, 2.0 * rate.real, None, None, mu_tilde, nu_tilde, False


def step_coefficients(model, pulse, coupling: CouplingKind, t: float) -> dict:
    """Every scalar coefficient the scenario's master equation needs at time t."""
    if t < 0:
        raise ParameterError(f"time must be non-negative, got {t}")
    if isinstance(pulse, NoControl):
        m_alpha = complex(_kernel.kernel_antiderivative_array(model, np.array([t]))[0])
        return {"mu": m_alpha.real, "nu": -m_alpha.imag}
    if isinstance(pulse, BangBangControl):
        return {
            "mu": _kernel.renormalized_mu_bb(model, t, pulse.t_c),
            "nu": _kernel.renormalized_nu_bb(model, t, pulse.t_c),
            "f": eval_f(SwitchingFunction(pulse.t_c), t),
        }
    env = pulse.envelope
    mu_t, nu_t = _kernel.renormalized_alpha_continuous(model, t, pulse.t_c, env)
    if coupling is CouplingKind.LOWERING:
        return {"mu_tilde": mu_t, "nu_tilde": nu_t}
    s2a = math.sin(2.0 * envelope_A(env, t))
    phase = np.exp(2j * envelope_A(env, t))
    # strip the 4 e^{-2iA(t)} prefactor to recover the plain weighted integrals
    int_mu_sin = float((mu_t * phase / 4.0).imag)
    int_nu_cos = float((nu_t * phase / 4.0).real)
    return {"mu_sin": 2.0 * s2a * int_mu_sin, "nu_cos": 2.0 * s2a * int_nu_cos}


def integrate(model, pulse, coupling: CouplingKind, initial: QubitState,
              h: float, t_final: float) -> Trajectory:
    """Fixed-step RK4 integration of the scenario's time-local master equation.

    The populations are exactly constant for dephasing scenarios (the
    generator only touches rho01); trace is conserved identically because
    rho00 is carried as 1 - rho11.
    """
    n = _check_grid(h, t_final, pulse)
    ts_half = np.arange(2 * n + 1) * (h / 2.0)
    c01, cpop, lam_s, lam_c, rec_mu, rec_nu, use_f = _coefficient_arrays(
        model, pulse, coupling, ts_half)
    t_c = _tc_of(pulse)

    rho01 = np.empty(n + 1, dtype=complex)
    rho00 = np.empty(n + 1, dtype=float)
    rho01[0] = initial.rho01
    rho00[0] = initial.rho00

    if coupling is CouplingKind.DEPHASING and isinstance(pulse, ContinuousControl):
        # affine real system: d x/dt = -2 L_s x + L_c * delta; Im rho01, pops frozen
        delta = initial.rho11 - initial.rho00
        x = initial.rho01.real
        y_im = initial.rho01.imag
        for k in range(n):
            i0, im, i1 = 2 * k, 2 * k + 1, 2 * k + 2
            d = lambda i, v: -2.0 * lam_s[i] * v + lam_c[i] * delta
            k1 = d(i0, x)
            k2 = d(im, x + 0.5 * h * k1)
            k3 = d(im, x + 0.5 * h * k2)
            k4 = d(i1, x + h * k3)
            x += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            rho01[k + 1] = x + 1j * y_im
            rho00[k + 1] = initial.rho00
    elif coupling is CouplingKind.DEPHASING:
        y = complex(initial.rho01)
        for k in range(n):
            i0, im, i1 = 2 * k, 2 * k + 1, 2 * k + 2
            fm = switch_value_for_step(t_c, ts_half[im]) if use_f else 1.0
            r0, rm, r1 = fm * c01[i0], fm * c01[im], fm * c01[i1]
            k1 = -r0 * y
            k2 = -rm * (y + 0.5 * h * k1)
            k3 = -rm * (y + 0.5 * h * k2)
            k4 = -r1 * (y + h * k3)
            y += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            rho01[k + 1] = y
            rho00[k + 1] = initial.rho00
    else:
        y = complex(initial.rho01)
        p = float(initial.rho11)
        for k in range(n):
            i0, im, i1 = 2 * k, 2 * k + 1, 2 * k + 2
            fm = switch_value_for_step(t_c, ts_half[im]) if use_f else 1.0
            k1 = -fm * c01[i0] * y
            q1 = -fm * cpop[i0] * p
            k2 = -fm * c01[im] * (y + 0.5 * h * k1)
            q2 = -fm * cpop[im] * (p + 0.5 * h * q1)
            k3 = -fm * c01[im] * (y + 0.5 * h * k2)
            q3 = -fm * cpop[im] * (p + 0.5 * h * q2)
            k4 = -fm * c01[i1] * (y + h * k3)
            q4 = -fm * cpop[i1] * (p + h * q3)
            y += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            p += (h / 6.0) * (q1 + 2 * q2 + 2 * q3 + q4)
            rho01[k + 1] = y
            rho00[k + 1] = 1.0 - p

    positivity = rho00 * (1.0 - rho00) - np.abs(rho01) ** 2
    return Trajectory(
        times=ts_half[::2].copy(),
        rho00=rho00,
        rho01=rho01,
        coeff_mu=rec_mu[::2].copy(),
        coeff_nu=rec_nu[::2].copy(),
        model=model,
        pulse=pulse,
        coupling=coupling,
        positivity_min=float(np.min(positivity)),
    )


def run_scenario(config) -> Trajectory:
    """Integrate the scenario described by a validated ScenarioConfig."""
    return integrate(config.model, config.pulse, config.coupling,
                     config.initial, config.h, config.t_final)

"""Environment correlation functions and their decoupling renormalizations.

The correlation function is split as alpha(t, s) = mu(t, s) - i*nu(t, s) with

    mu(dt) = int dw J(w) cos(w dt),   nu(dt) = int dw J(w) sin(w dt),

so mu is even and nu is odd in dt = t - s.  Three stationary families are
supported:

* Ornstein-Uhlenbeck:  alpha(dt) = exp(-|dt|/tau) / (2 tau), purely real.
* Spin-boson, J(w) = w^p exp(-w/Lambda_UV), p in {1, 3}:
  alpha(dt) = Gamma(p+1) / (1/Lambda_UV + i dt)^(p+1)  (Laplace transform).
* 1/f with infrared cutoff: alpha(dt) = E1(Lambda_IR (1/Lambda_UV + i dt)).

All closed forms have closed antiderivatives, so the bang-bang renormalized
integrals are evaluated exactly by signed half-cycle segment sums; the
continuous-control phase-weighted integrals use fixed-order Gauss-Legendre
panels per half cycle (see _core_py).
"""

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from ._backend import impl
from .errors import ParameterError
from .pulse import BangBangEnvelope, EnvelopeSpec, envelope_A


@dataclass(frozen=True)
class OrnsteinUhlenbeck:
    """Exponential correlation, correlation time tau; nu is identically zero."""

    tau: float
    scale: float = 1.0

    def __post_init__(self):
        if not (self.tau > 0):
            raise ParameterError(f"OU correlation time must be positive, got {self.tau}")
        _check_scale(self.scale)

    _kind = 0

    def _params(self):
        return (self._kind, self.tau, 0.0, self.scale)


@dataclass(frozen=True)
class SpinBoson:
    """Power-law spectral density J(w) = w^p exp(-w/lambda_uv), p in {1, 3}."""

    p: int
    lambda_uv: float
    scale: float = 1.0

    def __post_init__(self):
        if self.p not in (1, 3):
            raise ParameterError(f"spectral exponent must be 1 (Ohmic) or 3 (supra-Ohmic), got {self.p}")
        if not (self.lambda_uv > 0):
            raise ParameterError(f"UV cutoff must be positive, got {self.lambda_uv}")
        _check_scale(self.scale)

    _kind = 1

    def _params(self):
        return (self._kind, float(self.p), 1.0 / self.lambda_uv, self.scale)


@dataclass(frozen=True)
class OneOverF:
    """1/f spectral density exp(-w/lambda_uv)/w on [lambda_ir, inf)."""

    lambda_uv: float
    lambda_ir: float
    scale: float = 1.0

    def __post_init__(self):
        if not (self.lambda_uv > 0):
            raise ParameterError(f"UV cutoff must be positive, got {self.lambda_uv}")
        if not (self.lambda_ir > 0):
            raise ParameterError(f"IR cutoff must be positive, got {self.lambda_ir}")
        if not (self.lambda_ir < self.lambda_uv):
            raise ParameterError(
                f"IR cutoff must lie below the UV cutoff, got {self.lambda_ir} >= {self.lambda_uv}")
        _check_scale(self.scale)

    _kind = 2

    def _params(self):
        return (self._kind, 1.0 / self.lambda_uv, self.lambda_ir, self.scale)


NoiseModel = Union[OrnsteinUhlenbeck, SpinBoson, OneOverF]


def _as_c_array(values) -> np.ndarray:
    """Contiguous float64 view (the compiled backend requires it)."""
    return np.ascontiguousarray(values, dtype=float)


def _check_scale(scale):
    if not (scale >= 0) or not np.isfinite(scale):
        raise ParameterError(f"kernel scale must be finite and >= 0, got {scale}")


class KernelValue(NamedTuple):
    """alpha = mu - i*nu at one time lag."""

    mu: float
    nu: float


def kernel_array(model: NoiseModel, dts) -> np.ndarray:
    """alpha(dt) = mu - i*nu on an array of lags (any sign)."""
    return impl().kernel_values(*model._params(), _as_c_array(dts))


def kernel_antiderivative_array(model: NoiseModel, xs) -> np.ndarray:
    """M(x) = int_0^x alpha(u) du on an array of non-negative x."""
    return impl().kernel_antiderivative(*model._params(), _as_c_array(xs))


def eval_kernel(model: NoiseModel, dt: float) -> KernelValue:
    """Evaluate mu(dt), nu(dt) with the convention alpha = mu - i*nu."""
    a = complex(kernel_array(model, np.array([dt]))[0])
    return KernelValue(mu=a.real, nu=-a.imag)


def renormalized_alpha_bb(model: NoiseModel, ts, t_c: float) -> np.ndarray:
    """Complex bang-bang renormalized integral int_0^t alpha(t,s) f(s) ds.

    Equals F_mu(t) - i F_nu(t); computed as the signed half-cycle segment sum
    using the model's closed antiderivative.
    """
    if not (t_c > 0):
        raise ParameterError(f"cycle period must be positive, got {t_c}")
    return impl().bb_renormalized(*model._params(), _as_c_array(ts), t_c)


def renormalized_mu_bb(model: NoiseModel, t: float, t_c: float) -> float:
    """int_0^t mu(t,s) f(s) ds."""
    if t < 0:
        raise ParameterError(f"time must be non-negative, got {t}")
    return float(renormalized_alpha_bb(model, np.array([t]), t_c)[0].real)


def renormalized_nu_bb(model: NoiseModel, t: float, t_c: float) -> float:
    """int_0^t nu(t,s) f(s) ds."""
    if t < 0:
        raise ParameterError(f"time must be non-negative, got {t}")
    return float(-renormalized_alpha_bb(model, np.array([t]), t_c)[0].imag)


def phase_history_pair(model: NoiseModel, ts, t_c: float, envelope: EnvelopeSpec):
    """(h+, h-) with h+-(t) = int_0^t alpha(t,s) exp(+-2i A(s)) ds.

    For the ideal bang-bang staircase exp(+-2iA) = f, so both components
    reduce to the closed segment sum; smooth envelopes go through the
    Gauss-Legendre history quadrature.
    """
    ts = _as_c_array(ts)
    if isinstance(envelope, BangBangEnvelope):
        h = renormalized_alpha_bb(model, ts, t_c)
        return h, h.copy()
    b, coeffs, freqs = envelope._core_params()
    return impl().phase_history_pair(*model._params(), ts, t_c, b,
                                     _as_c_array(coeffs), _as_c_array(freqs))


def renormalized_alpha_continuous(model: NoiseModel, t: float, t_c: float,
                                  envelope: EnvelopeSpec):
    """Phase-weighted renormalizations (mu~(t), nu~(t)) for continuous control.

    mu~(t) = 4 exp(-2i A(t)) int_0^t mu(t,s) exp(2i A(s)) ds and nu~ likewise
    with nu in place of mu; both reduce to 4*int mu (resp. nu) when A == 0.
    """
    if t < 0:
        raise ParameterError(f"time must be non-negative, got {t}")
    hp, hm = phase_history_pair(model, np.array([t]), t_c, envelope)
    int_mu_e = 0.5 * (hp[0] + np.conj(hm[0]))
    int_nu_e = (np.conj(hm[0]) - hp[0]) / 2j
    ph = np.exp(-2j * envelope_A(envelope, t))
    return 4.0 * ph * int_mu_e, 4.0 * ph * int_nu_e

"""Decoupling controls: switching functions, pulse envelopes, decoupling check.

A control is characterized by its phase integral A(t) = int_0^t a(u) du.  The
decoupling constraint used throughout is

    2 A(T_c/2) = pi   and   2 A(T_c/2 + s) = pi + 2 A(s),

which makes the cycle-averaged toggled coupling vanish.  The linear ramp
A(t) = pi t / T_c satisfies it; so does any even-harmonic perturbation
A(t) = pi t / T_c + sum_m c_m sin(4 pi m t / T_c), which is the parametric
family searched by the optimizer.  Ideal bang-bang control is the staircase
A(t) = (pi/2) * #{pulses at j*T_c/2 <= t}, equivalent to the +-1 switching
function f(s).
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import EnvelopeError, ParameterError

_BOUNDARY_EPS = 1e-9


def _require_positive_tc(t_c):
    if not (t_c > 0):
        raise ParameterError(f"cycle period must be positive, got {t_c}")


@dataclass(frozen=True)
class LinearEnvelope:
    """A(t) = pi t / T_c."""

    t_c: float

    def __post_init__(self):
        _require_positive_tc(self.t_c)

    def phase(self, t):
        return np.pi * np.asarray(t, dtype=float) / self.t_c

    def _core_params(self):
        return (math.pi / self.t_c, (), ())

    smooth = True


@dataclass(frozen=True)
class BangBangEnvelope:
    """Ideal staircase: pulses of area pi/2 at t = T_c/2, T_c, 3T_c/2, ...

    Right-continuous; represents the unbounded-strength limit, so exp(2iA)
    reduces to the switching function f.
    """

    t_c: float

    def __post_init__(self):
        _require_positive_tc(self.t_c)

    def phase(self, t):
        half = self.t_c / 2.0
        steps = np.floor(np.asarray(t, dtype=float) / half + _BOUNDARY_EPS)
        return (np.pi / 2.0) * steps

    smooth = False


@dataclass(frozen=True)
class ParametricEnvelope:
    """Linear ramp plus even-harmonic sine perturbations.

    A(t) = pi t/T_c + sum_m c_m sin(2 pi (2m) t / T_c).  Even harmonics have
    period T_c/2, so the decoupling constraint holds for any coefficients;
    the constructor still verifies it numerically to 1e-10.
    """

    t_c: float
    coeffs: Tuple[float, ...]

    def __post_init__(self):
        _require_positive_tc(self.t_c)
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if any(not np.isfinite(c) for c in self.coeffs):
            raise EnvelopeError(f"envelope coefficients must be finite, got {self.coeffs}")
        self._verify_symmetry()

    def phase(self, t):
        t = np.asarray(t, dtype=float)
        a = np.pi * t / self.t_c
        for m, c in enumerate(self.coeffs, start=1):
            a = a + c * np.sin(4.0 * np.pi * m * t / self.t_c)
        return a

    def _core_params(self):
        freqs = tuple(4.0 * math.pi * m / self.t_c for m in range(1, len(self.coeffs) + 1))
        return (math.pi / self.t_c, self.coeffs, freqs)

    def _verify_symmetry(self, npts: int = 1024, tol: float = 1e-10):
        s = np.linspace(0.0, self.t_c / 2.0, npts)
        lhs = 2.0 * self.phase(self.t_c / 2.0 + s)
        rhs = np.pi + 2.0 * self.phase(s)
        worst = float(np.max(np.abs(lhs - rhs)))
        if worst > tol:
            raise EnvelopeError(
                f"envelope violates the decoupling symmetry constraint (residual {worst:.3e})")

    smooth = True


@dataclass(frozen=True)
class NullEnvelope:
    """A == 0: no control.  Used for free-evolution comparisons only."""

    t_c: float

    def __post_init__(self):
        _require_positive_tc(self.t_c)

    def phase(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def _core_params(self):
        return (0.0, (), ())

    smooth = True


EnvelopeSpec = (LinearEnvelope, BangBangEnvelope, ParametricEnvelope, NullEnvelope)


def envelope_A(env, t):
    """Accumulated control phase A(t); scalar in, scalar out."""
    out = env.phase(t)
    if np.ndim(t) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class SwitchingFunction:
    """f(s) = +1 on [2i*T_c/2, (2i+1)*T_c/2), -1 on the following half cycle."""

    t_c: float

    def __post_init__(self):
        _require_positive_tc(self.t_c)


def eval_f(sw: SwitchingFunction, s: float) -> float:
    """+-1 per the half-cycle rule; exact switch points take the left limit."""
    half = sw.t_c / 2.0
    m = math.floor(s / half + 1e-12)
    # left limit: a point sitting exactly on a boundary belongs to the segment it closes
    if m > 0 and abs(s - m * half) <= half * 1e-12:
        m -= 1
    return 1.0 if m % 2 == 0 else -1.0


def switch_value_for_step(t_c: float, t_mid: float) -> float:
    """f on the half-cycle containing t_mid (integration steps never straddle switches)."""
    m = int(math.floor(t_mid / (t_c / 2.0) + _BOUNDARY_EPS))
    return 1.0 if m % 2 == 0 else -1.0


def _toggled_coupling_integral(env, dephasing: bool, nodes_per_half: int = 64):
    """int_0^{T_c} U_c(s)^dag L U_c(s) ds as a 2x2 matrix."""
    t_c = env.t_c
    if isinstance(env, BangBangEnvelope):
        # piecewise constant integrand: exact segment sum
        half = t_c / 2.0
        fvals = np.array([1.0, -1.0])
        if dephasing:
            c_int = float(np.sum(fvals) * half)   # int cos(2A) = sum f_k * half
            s_int = 0.0
            return np.array([[c_int, -1j * s_int], [1j * s_int, -c_int]])
        e_int = complex(np.sum(fvals) * half)     # int exp(-2iA) = sum f_k * half
        return e_int * np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    # smooth envelope: Gauss-Legendre per half cycle
    gx, gw = np.polynomial.legendre.leggauss(nodes_per_half)
    total = np.zeros((2, 2), dtype=complex)
    for k in range(2):
        a, b = k * t_c / 2.0, (k + 1) * t_c / 2.0
        s = 0.5 * (b - a) * gx + 0.5 * (a + b)
        w = 0.5 * (b - a) * gw
        a_s = env.phase(s)
        if dephasing:
            c_int = float(np.sum(w * np.cos(2 * a_s)))
            s_int = float(np.sum(w * np.sin(2 * a_s)))
            total += np.array([[c_int, -1j * s_int], [1j * s_int, -c_int]])
        else:
            e_int = complex(np.sum(w * np.exp(-2j * a_s)))
            total += e_int * np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    return total


def check_decoupling_condition(env, coupling) -> float:
    """Residual norm of the cycle-averaged toggled coupling.

    Computes R = int_0^{T_c} U_c(s)^dag L U_c(s) ds numerically and returns
    ||R - lambda*I||_F with lambda the best constant (tr R / 2).  Zero means
    the envelope decouples the given coupling operator exactly.
    """
    from .dynamics import CouplingKind  # local import to avoid a cycle

    dephasing = coupling == CouplingKind.DEPHASING
    r = _toggled_coupling_integral(env, dephasing)
    lam = np.trace(r) / 2.0
    return float(np.linalg.norm(r - lam * np.eye(2), ord="fro"))

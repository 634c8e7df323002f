"""Figures of merit extracted from trajectories: T2, residuals, suppression."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dynamics import Trajectory
from .errors import MetricError


@dataclass(frozen=True)
class MetricsReport:
    t2: Optional[float]                 # None means "not reached"
    residual_decoherence: float         # 1 - |rho01(t_final)| / |rho01(0)|
    imag_growth: float                  # max_t |Im rho01(t)|
    suppression_ratio: float            # residual(controlled) / residual(free)

    def as_dict(self) -> dict:
        return {
            "t2": "not_reached" if self.t2 is None else self.t2,
            "residual_decoherence": self.residual_decoherence,
            "imag_growth": self.imag_growth,
            "suppression_ratio": self.suppression_ratio,
        }


def compute_t2(traj: Trajectory) -> Optional[float]:
    """First time |rho01| crosses e^{-1} of its initial value.

    Linear interpolation between grid points; None when no crossing occurs
    before t_final.  The modulus makes the metric invariant under global
    phase rotation of the coherence.
    """
    mag = np.abs(traj.rho01)
    if mag[0] <= 0.0:
        raise MetricError("T2 is undefined for zero initial coherence")
    threshold = mag[0] * math.exp(-1.0)
    below = np.nonzero(mag < threshold)[0]
    if len(below) == 0:
        return None
    i = int(below[0])
    if i == 0:
        return float(traj.times[0])
    t0, t1 = traj.times[i - 1], traj.times[i]
    m0, m1 = mag[i - 1], mag[i]
    return float(t0 + (m0 - threshold) / (m0 - m1) * (t1 - t0))


def residual_decoherence(traj: Trajectory) -> float:
    """Coherence lost by the end of the trajectory, in [0, 1] up to rounding."""
    mag = np.abs(traj.rho01)
    if mag[0] <= 0.0:
        raise MetricError("residual decoherence is undefined for zero initial coherence")
    return float(1.0 - mag[-1] / mag[0])


def compute_report(traj: Trajectory, reference: Trajectory) -> MetricsReport:
    """Metrics of a controlled trajectory against its free-decay reference."""
    if len(traj.times) != len(reference.times) or not np.allclose(
            traj.times, reference.times, rtol=0, atol=1e-12):
        raise MetricError("trajectory and reference must share the same time grid")
    res = residual_decoherence(traj)
    res_ref = residual_decoherence(reference)
    if res_ref > 0.0:
        ratio = res / res_ref
    else:
        ratio = 0.0 if abs(res) <= 1e-12 else math.inf
    return MetricsReport(
        t2=compute_t2(traj),
        residual_decoherence=res,
        imag_growth=float(np.max(np.abs(traj.rho01.imag))),
        suppression_ratio=ratio,
    )

"""Renormalized non-Markovian qubit dynamics under dynamical decoupling."""

from ._backend import backend_name, compiled_available
from .config import ScenarioConfig, load_config, parse_config
from .dynamics import (BangBangControl, ContinuousControl, CouplingKind,
                       NoControl, QubitState, Trajectory, integrate,
                       run_scenario, step_coefficients)
from .errors import (ConfigurationError, DekohereError, EnvelopeError,
                     MetricError, NumericalError, ParameterError)
from .kernel import (KernelValue, NoiseModel, OneOverF, OrnsteinUhlenbeck,
                     SpinBoson, eval_kernel, renormalized_alpha_continuous,
                     renormalized_mu_bb, renormalized_nu_bb)
from .metrics import MetricsReport, compute_report, compute_t2
from .optimize import OptimizationProblem, OptimizeResult, optimize_envelope
from .pulse import (BangBangEnvelope, LinearEnvelope, NullEnvelope,
                    ParametricEnvelope, SwitchingFunction,
                    check_decoupling_condition, envelope_A, eval_f)

__version__ = "0.1.0"

__all__ = [
    "BangBangControl", "BangBangEnvelope", "ConfigurationError",
    "ContinuousControl", "CouplingKind", "DekohereError", "EnvelopeError",
    "KernelValue", "LinearEnvelope", "MetricError", "MetricsReport",
    "NoControl", "NoiseModel", "NullEnvelope", "NumericalError", "OneOverF",
    "OptimizationProblem", "OptimizeResult", "OrnsteinUhlenbeck",
    "ParameterError", "ParametricEnvelope", "QubitState", "ScenarioConfig",
    "SpinBoson", "SwitchingFunction", "Trajectory", "backend_name",
    "check_decoupling_condition", "compiled_available", "compute_report",
    "compute_t2", "envelope_A", "eval_f", "eval_kernel", "integrate",
    "load_config", "optimize_envelope", "parse_config",
    "renormalized_alpha_continuous", "renormalized_mu_bb",
    "renormalized_nu_bb", "run_scenario", "step_coefficients",
]

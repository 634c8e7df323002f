"""Scenario configuration: JSON tree -> validated simulation objects.

One scenario per file; a sweep is the same scenario with a ``sweep_tc`` list.
All quantities are dimensionless with hbar = 1; the time unit is set by the
kernel parameters (tau, 1/Lambda).
"""

import json
from dataclasses import dataclass
from typing import List, Optional

from .dynamics import (BangBangControl, ContinuousControl, CouplingKind,
                       NoControl, QubitState)
from .errors import ConfigurationError
from .kernel import NoiseModel, OneOverF, OrnsteinUhlenbeck, SpinBoson
from .pulse import LinearEnvelope, ParametricEnvelope

_NOISE_TYPES = ("ou", "ohmic", "supra_ohmic", "one_over_f")
_CONTROL_TYPES = ("none", "bang_bang", "continuous")
_COUPLINGS = {"sigma_z": CouplingKind.DEPHASING, "sigma_minus": CouplingKind.LOWERING}


@dataclass(frozen=True)
class ScenarioConfig:
    model: NoiseModel
    coupling: CouplingKind
    pulse: object
    initial: QubitState
    h: float
    t_final: float
    sweep_tc: Optional[List[float]]
    normalized: dict

    @property
    def t_c(self) -> Optional[float]:
        return None if isinstance(self.pulse, NoControl) else self.pulse.t_c


def _need(tree: dict, field: str, path: str):
    if field not in tree:
        raise ConfigurationError(f"{path}.{field}", "required field is missing")
    return tree[field]


def _number(tree: dict, field: str, path: str, default=None):
    if field not in tree:
        if default is not None:
            return default
        raise ConfigurationError(f"{path}.{field}", "required numeric field is missing")
    v = tree[field]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise ConfigurationError(f"{path}.{field}", f"expected a number, got {v!r}")
    return float(v)


def _parse_noise(tree) -> NoiseModel:
    if not isinstance(tree, dict):
        raise ConfigurationError("noise", "expected an object")
    kind = _need(tree, "type", "noise")
    scale = _number(tree, "scale", "noise", default=1.0)
    try:
        if kind == "ou":
            return OrnsteinUhlenbeck(tau=_number(tree, "tau", "noise"), scale=scale)
        if kind == "ohmic":
            return SpinBoson(p=1, lambda_uv=_number(tree, "lambda_uv", "noise"), scale=scale)
        if kind == "supra_ohmic":
            return SpinBoson(p=3, lambda_uv=_number(tree, "lambda_uv", "noise"), scale=scale)
        if kind == "one_over_f":
            return OneOverF(lambda_uv=_number(tree, "lambda_uv", "noise"),
                            lambda_ir=_number(tree, "lambda_ir", "noise"), scale=scale)
    except ConfigurationError:
        raise
    except Exception as exc:
        raise ConfigurationError("noise", str(exc)) from exc
    raise ConfigurationError("noise.type",
                             f"unknown noise type {kind!r}; expected one of {_NOISE_TYPES}")


def _parse_control(tree):
    if not isinstance(tree, dict):
        raise ConfigurationError("control", "expected an object")
    kind = _need(tree, "type", "control")
    if kind == "none":
        return NoControl()
    if kind not in _CONTROL_TYPES:
        raise ConfigurationError(
            "control.type", f"unknown control type {kind!r}; expected one of {_CONTROL_TYPES}")
    t_c = _number(tree, "t_c", "control")
    if t_c <= 0:
        raise ConfigurationError("control.t_c", f"cycle period must be positive, got {t_c}")
    if kind == "bang_bang":
        return BangBangControl(t_c=t_c)
    coeffs = tree.get("envelope_coeffs", [])
    if not isinstance(coeffs, list) or any(
            not isinstance(c, (int, float)) or isinstance(c, bool) for c in coeffs):
        raise ConfigurationError("control.envelope_coeffs", "expected a list of numbers")
    if coeffs:
        try:
            env = ParametricEnvelope(t_c, tuple(float(c) for c in coeffs))
        except Exception as exc:
            raise ConfigurationError("control.envelope_coeffs", str(exc)) from exc
    else:
        env = LinearEnvelope(t_c)
    return ContinuousControl(envelope=env)


def _parse_initial(tree) -> QubitState:
    if tree == "plus" or tree is None:
        return QubitState.plus()
    if not isinstance(tree, dict):
        raise ConfigurationError("initial", "expected \"plus\" or an object")
    rho00 = _number(tree, "rho00", "initial")
    re01 = _number(tree, "re_rho01", "initial")
    im01 = _number(tree, "im_rho01", "initial", default=0.0)
    try:
        return QubitState(rho00, 1.0 - rho00, complex(re01, im01))
    except Exception as exc:
        raise ConfigurationError("initial", str(exc)) from exc


def parse_config(tree: dict) -> ScenarioConfig:
    """Validate a configuration tree; raises ConfigurationError with the field path."""
    if not isinstance(tree, dict):
        raise ConfigurationError("config", "expected a JSON object")
    known = {"noise", "coupling", "control", "grid", "initial", "sweep_tc"}
    for key in tree:
        if key not in known:
            raise ConfigurationError(key, "unknown field")
    model = _parse_noise(_need(tree, "noise", "config"))
    coupling_name = _need(tree, "coupling", "config")
    if coupling_name not in _COUPLINGS:
        raise ConfigurationError(
            "coupling", f"unknown coupling {coupling_name!r}; expected one of {sorted(_COUPLINGS)}")
    coupling = _COUPLINGS[coupling_name]
    pulse = _parse_control(_need(tree, "control", "config"))
    grid = _need(tree, "grid", "config")
    if not isinstance(grid, dict):
        raise ConfigurationError("grid", "expected an object")
    h = _number(grid, "h", "grid")
    t_final = _number(grid, "t_final", "grid")
    initial = _parse_initial(tree.get("initial", "plus"))
    sweep = tree.get("sweep_tc")
    if sweep is not None:
        if not isinstance(sweep, list) or any(
                not isinstance(v, (int, float)) or isinstance(v, bool) or v <= 0 for v in sweep):
            raise ConfigurationError("sweep_tc", "expected a list of positive numbers")
        sweep = [float(v) for v in sweep]

    # early grid validation so bad configs fail before any computation
    from .dynamics import _check_grid
    _check_grid(h, t_final, pulse)

    return ScenarioConfig(model=model, coupling=coupling, pulse=pulse,
                          initial=initial, h=h, t_final=t_final,
                          sweep_tc=sweep, normalized=normalize_tree(tree))


def normalize_tree(tree: dict) -> dict:
    """Canonical form: defaults materialized, keys ordered, floats as floats."""
    noise = dict(tree["noise"])
    noise.setdefault("scale", 1.0)
    out = {
        "noise": {k: (float(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v)
                  for k, v in sorted(noise.items())},
        "coupling": tree["coupling"],
        "control": {},
        "grid": {"h": float(tree["grid"]["h"]), "t_final": float(tree["grid"]["t_final"])},
        "initial": tree.get("initial", "plus"),
    }
    control = dict(tree["control"])
    out["control"]["type"] = control["type"]
    if control["type"] != "none":
        out["control"]["t_c"] = float(control["t_c"])
    if control["type"] == "continuous":
        out["control"]["envelope_coeffs"] = [float(c) for c in control.get("envelope_coeffs", [])]
    if isinstance(out["initial"], dict):
        out["initial"] = {k: float(v) for k, v in sorted(out["initial"].items())}
        out["initial"].setdefault("im_rho01", 0.0)
    if tree.get("sweep_tc") is not None:
        out["sweep_tc"] = [float(v) for v in tree["sweep_tc"]]
    return out


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            tree = json.load(fh)
    except OSError as exc:
        raise ConfigurationError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError("config", f"invalid JSON in {path}: {exc}") from exc
    return parse_config(tree)


def config_with_tc(config: ScenarioConfig, t_c: float) -> ScenarioConfig:
    """The same scenario with the control period replaced (for sweeps)."""
    tree = json.loads(json.dumps(config.normalized))
    if tree["control"]["type"] == "none":
        raise ConfigurationError("control.type", "cannot sweep t_c without a control")
    tree["control"]["t_c"] = float(t_c)
    tree.pop("sweep_tc", None)
    return parse_config(tree)


def config_free(config: ScenarioConfig) -> ScenarioConfig:
    """The free-decay reference: same model, grid and initial state, no control."""
    tree = json.loads(json.dumps(config.normalized))
    tree["control"] = {"type": "none"}
    tree.pop("sweep_tc", None)
    return parse_config(tree)

"""Config-driven scenario runner.

    dekohere run      <config.json> [--out DIR]
    dekohere sweep    <config.json> [--out DIR] [--tc LIST]
    dekohere t2       <config.json>
    dekohere optimize <config.json> [--out DIR] [--budget N] [--seed N]
    dekohere validate <config.json> [--print-normalized]

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure
(validate uses 0/1).  CSV output is locale independent: fixed column order,
decimal points, LF line endings, 17 significant digits.
"""

import argparse
import concurrent.futures
import json
import math
import os
import sys

import numpy as np

from ._backend import backend_name
from .config import config_free, config_with_tc, load_config
from .dynamics import CouplingKind, NoControl, run_scenario
from .errors import ConfigurationError, DekohereError
from .kernel import OrnsteinUhlenbeck, SpinBoson, OneOverF, eval_kernel, renormalized_mu_bb
from .metrics import compute_report, compute_t2
from .optimize import OptimizationProblem, optimize_envelope
from .pulse import BangBangEnvelope, LinearEnvelope, check_decoupling_condition

CSV_HEADER = "t,rho00,re_rho01,im_rho01,abs_rho01,coeff_mu,coeff_nu"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(path: str, traj) -> None:
    lines = [CSV_HEADER]
    for i in range(len(traj.times)):
        lines.append(",".join(_fmt(v) for v in (
            traj.times[i], traj.rho00[i], traj.rho01[i].real, traj.rho01[i].imag,
            abs(traj.rho01[i]), traj.coeff_mu[i].real, traj.coeff_nu[i].real)))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_report(path: str, report, traj) -> None:
    rows = report.as_dict()
    rows["positivity_min"] = traj.positivity_min
    rows["positivity_ok"] = int(traj.positivity_ok)
    rows["backend"] = backend_name()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in rows.items():
            if isinstance(value, float):
                value = _fmt(value)
            fh.write(f"{key}={value}\n")


def _stem(config_path: str, out_dir: str) -> str:
    name = os.path.splitext(os.path.basename(config_path))[0]
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def _run_single(config):
    traj = run_scenario(config)
    free = run_scenario(config_free(config))
    return traj, free, compute_report(traj, free)


def cmd_run(args) -> int:
    config = load_config(args.config)
    traj, _, report = _run_single(config)
    stem = _stem(args.config, args.out)
    write_trajectory_csv(stem + ".csv", traj)
    _write_report(stem + "__report.txt", report, traj)
    print(f"wrote {stem}.csv")
    return 0


def _sweep_values(config, override):
    values = override if override is not None else (config.sweep_tc or [])
    seen, out = set(), []
    for v in values:
        if v in seen:
            print(f"warning: duplicate t_c {v:g} ignored", file=sys.stderr)
            continue
        seen.add(v)
        out.append(v)
    return out

def cmd_sweep(args) -> int:
    config = load_config(args.config)
    if isinstance(config.pulse, NoControl):
        raise ConfigurationError("control.type", "sweep requires a periodic control")
    tcs = _sweep_values(config, args.tc)
    stem = _stem(args.config, args.out)

    free_traj = run_scenario(config_free(config))
    write_trajectory_csv(stem + "__free.csv", free_traj)

    def run_entry(t_c):
        entry = config_with_tc(config, t_c)
        traj = run_scenario(entry)
        write_trajectory_csv(f"{stem}__tc_{t_c:g}.csv", traj)
        return t_c, compute_report(traj, free_traj)

    results = []
    if tcs:
        with concurrent.futures.ThreadPoolExecutor(
                max_workers=min(len(tcs), os.cpu_count() or 1)) as pool:
            results = list(pool.map(run_entry, tcs))

    free_report = compute_report(free_traj, free_traj)
    lines = ["t_c,residual,t2,suppression_ratio"]
    t2s = free_report.as_dict()["t2"]
    lines.append(f"free,{_fmt(free_report.residual_decoherence)},"
                 f"{t2s if isinstance(t2s, str) else _fmt(t2s)},{_fmt(1.0)}")
    for t_c, report in results:
        t2v = report.as_dict()["t2"]
        lines.append(f"{t_c:g},{_fmt(report.residual_decoherence)},"
                     f"{t2v if isinstance(t2v, str) else _fmt(t2v)},"
                     f"{_fmt(report.suppression_ratio)}")
    with open(stem + "__summary.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {stem}__summary.csv ({len(results)} sweep entries)")
    return 0


def cmd_t2(args) -> int:
    config = load_config(args.config)
    traj = run_scenario(config)
    t2 = compute_t2(traj)
    print("t2=not_reached" if t2 is None else f"t2={_fmt(t2)}")
    return 0


def cmd_optimize(args) -> int:
    config = load_config(args.config)
    if config.t_c is None:
        raise ConfigurationError("control.type", "optimize requires a periodic control")
    problem = OptimizationProblem(
        model=config.model, coupling=config.coupling, t_c=config.t_c,
        t_final=config.t_final, m=args.dim, c_max=args.c_max,
        budget=args.budget, seed=args.seed, initial=config.initial)
    result = optimize_envelope(problem)
    stem = _stem(args.config, args.out)
    header = "eval," + ",".join(f"c{i+1}" for i in range(problem.m)) + \
        ",objective,best_so_far,feasible"
    lines = [header]
    for rec in result.log:
        lines.append(",".join(
            [str(rec.index)] + [_fmt(c) for c in rec.coeffs]
            + [_fmt(rec.objective), _fmt(rec.best_so_far), str(int(rec.feasible))]))
    with open(stem + "__optlog.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    if result.budget_exhausted:
        print("warning: evaluation budget exhausted; best so far reported", file=sys.stderr)
    best = ",".join(_fmt(c) for c in result.best_coeffs)
    print(f"best_coeffs={best}")
    print(f"best_objective={_fmt(result.best_objective_full)}")
    print(f"baseline_objective={_fmt(result.baseline_objective)}")
    return 0


def _self_test() -> list:
    """Fast kernel-oracle checks; returns a list of failure strings."""
    failures = []

    def check(name, ok):
        if not ok:
            failures.append(name)

    ou = OrnsteinUhlenbeck(tau=0.5)
    check("ou mu(0) = 1/(2 tau)", abs(eval_kernel(ou, 0.0).mu - 1.0) < 1e-12)
    for model in (ou, SpinBoson(p=1, lambda_uv=20.0), SpinBoson(p=3, lambda_uv=20.0),
                  OneOverF(lambda_uv=20.0, lambda_ir=0.01)):
        for dt in (0.3, 1.7):
            kp, km = eval_kernel(model, dt), eval_kernel(model, -dt)
            check(f"{type(model).__name__} symmetry at {dt}",
                  abs(kp.mu - km.mu) < 1e-12 and abs(kp.nu + km.nu) < 1e-12)

    # Ohmic closed form against composite quadrature of the defining integral
    gx, gw = np.polynomial.legendre.leggauss(64)
    model = SpinBoson(p=1, lambda_uv=20.0)
    for dt in (0.1, 1.0):
        total = 0.0
        for a, b in zip(np.linspace(0, 800, 401)[:-1], np.linspace(0, 800, 401)[1:]):
            w = 0.5 * (b - a) * gx + 0.5 * (a + b)
            total += np.sum(0.5 * (b - a) * gw * w * np.exp(-w / 20.0) * np.cos(w * dt))
        check(f"ohmic quadrature oracle at dt={dt}",
              abs(eval_kernel(model, dt).mu - total) <= 1e-7 * max(abs(total), 1.0))

    # bang-bang renormalization against per-segment quadrature
    t, t_c = 1.3, 0.5
    total = 0.0
    half = t_c / 2.0
    bounds = [j * half for j in range(int(t / half) + 1)] + [t]
    for k, (a, b) in enumerate(zip(bounds[:-1], bounds[1:])):
        if b <= a:
            continue
        s = 0.5 * (b - a) * gx + 0.5 * (a + b)
        vals = np.array([eval_kernel(model, t - si).mu for si in s])
        total += (-1) ** k * np.sum(0.5 * (b - a) * gw * vals)
    check("bang-bang segment quadrature oracle",
          abs(renormalized_mu_bb(model, t, t_c) - total) < 1e-8 * max(abs(total), 1.0))

    check("linear envelope decouples sigma_z",
          check_decoupling_condition(LinearEnvelope(0.5), CouplingKind.DEPHASING) <= 1e-10)
    check("bang-bang envelope decouples sigma_z",
          check_decoupling_condition(BangBangEnvelope(0.5), CouplingKind.DEPHASING) <= 1e-10)
    return failures


def cmd_validate(args) -> int:
    try:
        config = load_config(args.config)
    except DekohereError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    if args.print_normalized:
        print(json.dumps(config.normalized, indent=2, sort_keys=True))
    failures = _self_test()
    for f in failures:
        print(f"self-test failed: {f}", file=sys.stderr)
    if not failures:
        print("ok")
    return 1 if failures else 0


def _parse_tc_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigurationError("--tc", f"expected comma-separated numbers: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dekohere",
                                     description="qubit decoupling scenario runner")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **extra):
        p = sub.add_parser(name)
        p.add_argument("config")
        p.set_defaults(fn=fn)
        return p

    p = add("run", cmd_run)
    p.add_argument("--out", default=".")
    p = add("sweep", cmd_sweep)
    p.add_argument("--out", default=".")
    p.add_argument("--tc", type=_parse_tc_list, default=None)
    add("t2", cmd_t2)
    p = add("optimize", cmd_optimize)
    p.add_argument("--out", default=".")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--c-max", type=float, default=0.4)
    p = add("validate", cmd_validate)
    p.add_argument("--print-normalized", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DekohereError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

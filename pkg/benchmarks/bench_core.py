#!/usr/bin/env python3
"""Benchmark the compiled core against the numpy fallback.

Times the three hot kernels (correlation values, bang-bang renormalization,
phase-weighted history integrals) and one full worst-case trajectory, then
prints a speedup table.  Run after `python setup.py build_ext --inplace`.
"""

import time

import numpy as np

from dekohere._backend import compiled_available, compiled_impl, python_impl

CASES = [
    ("ou tau=0.5", (0, 0.5, 0.0, 1.0)),
    ("ohmic L=10", (1, 1.0, 0.1, 1.0)),
    ("supra L=2", (1, 3.0, 0.5, 1.0)),
    ("1/f 20/0.01", (2, 0.05, 0.01, 1.0)),
]

T_C = 0.0625
TS = np.arange(2 * 2048 + 1) * (T_C / 64.0 / 2.0)  # half grid, t_final = 2
ENV = (np.pi / T_C, np.array([]), np.array([]))


def best_of(fn, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(impl_module):
    rows = {}
    for name, params in CASES:
        rows[name] = {
            "kernel": best_of(lambda: impl_module.kernel_values(*params, TS)),
            "bb": best_of(lambda: impl_module.bb_renormalized(*params, TS, T_C)),
            "hist": best_of(lambda: impl_module.phase_history_pair(*params, TS, T_C, *ENV),
                            repeats=1),
        }
    return rows


def bench_trajectory():
    import os
    from dekohere import (ContinuousControl, CouplingKind, LinearEnvelope,
                          QubitState, SpinBoson, integrate)

    def run():
        model = SpinBoson(p=1, lambda_uv=10.0)
        integrate(model, ContinuousControl(LinearEnvelope(T_C)),
                  CouplingKind.DEPHASING, QubitState.plus(), T_C / 64.0, 2.0)
    return best_of(run, repeats=1)


def main():
    py = bench_backend(python_impl())
    print(f"{'case':14s} {'op':6s} {'python':>10s}", end="")
    cc = None
    if compiled_available():
        cc = bench_backend(compiled_impl())
        print(f" {'compiled':>10s} {'speedup':>8s}")
    else:
        print("   (compiled core not built)")
    for name, _ in CASES:
        for op in ("kernel", "bb", "hist"):
            line = f"{name:14s} {op:6s} {py[name][op] * 1e3:9.2f}ms"
            if cc is not None:
                line += f" {cc[name][op] * 1e3:9.2f}ms {py[name][op] / cc[name][op]:7.1f}x"
            print(line)
    t_traj = bench_trajectory()
    print(f"\nfull worst-case trajectory (active backend): {t_traj * 1e3:.1f} ms")


if __name__ == "__main__":
    main()

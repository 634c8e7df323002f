#!/usr/bin/env python3
"""Generate the CSV dataset behind the shipped figure specs.

Runs the simulation CLI (`dekohere sweep`) for every figure config into
plots/data/.  Only the public CLI is used; already-present outputs are kept
unless --force is given.
"""

import argparse
import os
import subprocess
import sys

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_DIR = os.path.join(REPO, "configs")
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

SWEEP_CONFIGS = [
    "fig01a_ou_sz_bb.json",
    "fig01b_ou_sz_cont.json",
    "fig01c_ou_sm_cont.json",
    "fig02_ohmic_kernels_bb.json",
    "fig04a_ohmic_sz_bb.json",
    "fig04b_supra_sz_bb.json",
    "fig05a_ohmic_sz_cont.json",
    "fig05b_supra_sz_cont.json",
    "fig06_ohmic_sm_bb.json",
    "fig07_supra_sm_bb.json",
    "fig08_ohmic_sm_cont.json",
    "fig09_supra_sm_cont.json",
    "fig10a_1f_sz_bb.json",
    "fig10b_1f_sz_cont.json",
    "fig11a_1f_sm_bb.json",
    "fig11b_1f_sm_cont.json",
]


def generate(force: bool = False, verbose: bool = True) -> None:
    os.makedirs(DATA_DIR, exist_ok=True)
    for name in SWEEP_CONFIGS:
        stem = os.path.splitext(name)[0]
        summary = os.path.join(DATA_DIR, f"{stem}__summary.csv")
        if os.path.exists(summary) and not force:
            if verbose:
                print(f"keep {stem}")
            continue
        if verbose:
            print(f"sweep {stem}")
        subprocess.run(
            [sys.executable, "-m", "dekohere.cli", "sweep",
             os.path.join(CONFIG_DIR, name), "--out", DATA_DIR],
            check=True, stdout=subprocess.DEVNULL)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--force", action="store_true")
    args = parser.parse_args()
    generate(force=args.force)
    return 0


if __name__ == "__main__":
    sys.exit(main())

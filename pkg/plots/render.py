#!/usr/bin/env python3
"""Render a figure-spec JSON into an SVG from simulation CSV output.

    python plots/render.py plots/figures/fig01_ou.json --out fig01.svg
    [--data-root DIR]

The renderer consumes only the public CSV contract of the simulation CLI
(`t,rho00,re_rho01,im_rho01,abs_rho01,coeff_mu,coeff_nu`); it never computes
physics.  A spec may carry ordering assertions (curve values at a given time,
or peak magnitudes) which are checked after reading the data; a violated
assertion exits with code 4.

Exit codes: 0 ok, 2 bad spec/data (missing file, empty CSV, missing column),
4 assertion violated.
"""

import argparse
import csv
import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from svgplot import Panel, render_figure


class RenderError(Exception):
    pass


class AssertionViolation(Exception):
    pass


def read_csv_columns(path):
    if not os.path.exists(path):
        raise RenderError(f"missing CSV file: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RenderError(f"empty CSV file: {path}") from None
        rows = [row for row in reader if row]
    if not rows:
        raise RenderError(f"empty CSV file: {path}")
    columns = {name: [] for name in header}
    for row in rows:
        for name, value in zip(header, row):
            columns[name].append(float(value))
    return columns


def column(columns, name, path):
    if name not in columns:
        raise RenderError(f"column {name!r} not present in {path}")
    return columns[name]


def load_curves(spec, data_root):
    """Per panel: list of (label, xs, ys)."""
    loaded = []
    for panel_spec in spec["panels"]:
        curves = []
        for curve in panel_spec["curves"]:
            path = os.path.join(data_root, curve["csv"])
            cols = read_csv_columns(path)
            xs = column(cols, curve.get("x", "t"), path)
            ys = column(cols, curve["y"], path)
            curves.append((curve["label"], xs, ys))
        loaded.append(curves)
    return loaded


def _value_at(xs, ys, x_target):
    best, val = None, None
    for x, y in zip(xs, ys):
        d = abs(x - x_target)
        if best is None or d < best:
            best, val = d, y
    return val


def check_assertions(spec, loaded):
    for a in spec.get("assertions", []):
        kind = a["kind"]
        if kind == "value_order":
            curves = {lab: (xs, ys) for lab, xs, ys in loaded[a["panel"]]}
            vals = [_value_at(*curves[lab], a["at_x"]) for lab in a["order"]]
            ok = all(vals[i] < vals[i + 1] for i in range(len(vals) - 1))
            if not ok:
                raise AssertionViolation(
                    f"value_order failed in panel {a['panel']} at x={a['at_x']}: "
                    f"{list(zip(a['order'], vals))}")
        elif kind == "max_abs_greater":
            curves = {lab: ys for lab, _, ys in loaded[a["panel"]]}
            hi = max(abs(v) for v in curves[a["greater"]])
            lo = max(abs(v) for v in curves[a["than"]])
            if not hi > lo:
                raise AssertionViolation(
                    f"max_abs_greater failed in panel {a['panel']}: "
                    f"{a['greater']}={hi:g} vs {a['than']}={lo:g}")
        elif kind == "value_greater":
            pa, la = a["a"]["panel"], a["a"]["label"]
            pb, lb = a["b"]["panel"], a["b"]["label"]
            curves_a = {lab: (xs, ys) for lab, xs, ys in loaded[pa]}
            curves_b = {lab: (xs, ys) for lab, xs, ys in loaded[pb]}
            va = _value_at(*curves_a[la], a["at_x"])
            vb = _value_at(*curves_b[lb], a["at_x"])
            if not va > vb:
                raise AssertionViolation(
                    f"value_greater failed at x={a['at_x']}: "
                    f"{la}(panel {pa})={va:g} vs {lb}(panel {pb})={vb:g}")
        else:
            raise RenderError(f"unknown assertion kind {kind!r}")


def render(spec_path, out_path, data_root=None):
    with open(spec_path, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    root = data_root or os.path.join(os.path.dirname(os.path.abspath(spec_path)),
                                     spec.get("data_root", "../data"))
    loaded = load_curves(spec, root)
    check_assertions(spec, loaded)
    panels = []
    for panel_spec, curves in zip(spec["panels"], loaded):
        panel = Panel(title=panel_spec.get("title", ""),
                      xlabel=panel_spec.get("xlabel", "t"),
                      ylabel=panel_spec.get("ylabel", ""),
                      xlim=panel_spec.get("xlim"),
                      ylim=panel_spec.get("ylim"))
        for label, xs, ys in curves:
            panel.add_curve(label, xs, ys)
        panels.append(panel)
    svg = render_figure(spec.get("title", ""), panels,
                        columns=spec.get("columns", 2))
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("spec")
    parser.add_argument("--out", required=True)
    parser.add_argument("--data-root", default=None)
    args = parser.parse_args(argv)
    try:
        render(args.spec, args.out, args.data_root)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionViolation as exc:
        print(f"assertion violated: {exc}", file=sys.stderr)
        return 4
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

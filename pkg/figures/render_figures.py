#!/usr/bin/env python3
"""Render scatter figures from the qys CLI's CSV output.

Panels:
  fig1-left   P/Q against p/q for a general random run, colored by category
  fig1-right  the same plot for an equal-mixing run (empty x < 1 half-plane)
  fig2        one subplot per lambda column group: P_lambda/Q_lambda vs p/q

The renderer is a pure function of the CSV: point positions come from the
ratio columns and colors from the category column, nothing is recomputed.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

PANELS = ("fig1-left", "fig1-right", "fig2")

BASE_COLUMNS = ["trial", "p1", "p2", "q1", "q2", "p", "q", "P", "Q",
                "ratio_pq", "ratio_PQ", "category"]
LAMBDA_GROUP = ["lambda", "P_lambda", "Q_lambda", "occurs"]

CATEGORY_COLORS = {
    "BOTH": "tab:red",
    "QC_ONLY": "tab:orange",
    "QQ_ONLY": "tab:blue",
    "NEITHER": "tab:gray",
}


class SchemaError(ValueError):
    """CSV does not match the experiment output schema."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    panel: str
    output: str
    lambda_values: tuple[float, ...] | None = None
    axis_max: float = 3.0


@dataclass
class CsvData:
    rows: list[dict]
    lambda_groups: list[list[dict]]  # one list of row dicts per lambda column group


def read_csv(path: str) -> CsvData:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("empty CSV") from None
        if header[: len(BASE_COLUMNS)] != BASE_COLUMNS:
            missing = [c for c in BASE_COLUMNS if c not in header]
            name = missing[0] if missing else header[0]
            raise SchemaError(f"missing or misplaced column: {name}")
        extra = header[len(BASE_COLUMNS):]
        if len(extra) % len(LAMBDA_GROUP) != 0 or any(
            extra[i : i + len(LAMBDA_GROUP)] != LAMBDA_GROUP
            for i in range(0, len(extra), len(LAMBDA_GROUP))
        ):
            raise SchemaError("malformed lambda column groups")
        n_groups = len(extra) // len(LAMBDA_GROUP)
        rows = []
        groups: list[list[dict]] = [[] for _ in range(n_groups)]
        for line in reader:
            base = dict(zip(BASE_COLUMNS, line))
            for key in BASE_COLUMNS[:-1]:
                if key != "trial":
                    base[key] = float(base[key])
            rows.append(base)
            for g in range(n_groups):
                offset = len(BASE_COLUMNS) + g * len(LAMBDA_GROUP)
                chunk = line[offset : offset + len(LAMBDA_GROUP)]
                groups[g].append({
                    "lambda": float(chunk[0]),
                    "P_lambda": float(chunk[1]),
                    "Q_lambda": float(chunk[2]),
                    "occurs": chunk[3] == "true",
                })
    return CsvData(rows=rows, lambda_groups=groups)


def _scatter_points(rows, y_values, axis_max):
    """Split (x, y) pairs by category; NaN/overflow points are counted, not drawn."""
    points = {cat: ([], []) for cat in CATEGORY_COLORS}
    clipped = 0
    for row, y in zip(rows, y_values):
        x = row["ratio_pq"]
        if not (math.isfinite(x) and math.isfinite(y)):
            clipped += 1
            continue
        if x > axis_max or y > axis_max:
            clipped += 1
            continue
        xs, ys = points[row["category"]]
        xs.append(x)
        ys.append(y)
    return points, clipped


def _draw_panel(ax, points, axis_max, title):
    for cat, (xs, ys) in points.items():
        ax.scatter(xs, ys, s=4, c=CATEGORY_COLORS[cat], label=cat, alpha=0.6)
    ax.axvline(1.0, color="k", lw=0.8)
    ax.axhline(1.0, color="k", lw=0.8)
    ax.set_xlim(0, axis_max)
    ax.set_ylim(0, axis_max)
    ax.set_xlabel("p/q")
    ax.set_title(title)


def render(spec: FigureSpec) -> dict:
    """Write the requested panel and return the plotted point sets per panel."""
    if spec.panel not in PANELS:
        raise ValueError(f"panel must be one of {PANELS}")
    data = read_csv(spec.input_csv)
    plotted = {}
    if spec.panel in ("fig1-left", "fig1-right"):
        y = [row["ratio_PQ"] for row in data.rows]
        points, clipped = _scatter_points(data.rows, y, spec.axis_max)
        fig, ax = plt.subplots(figsize=(5, 5))
        title = "random mixing weights" if spec.panel == "fig1-left" else "equal mixing weights"
        _draw_panel(ax, points, spec.axis_max, title)
        ax.set_ylabel("P/Q")
        ax.legend(loc="upper right", fontsize=7)
        if clipped:
            fig.text(0.01, 0.01, f"{clipped} points outside [0, {spec.axis_max}]^2 not shown",
                     fontsize=7)
        plotted[spec.panel] = points
    else:
        if not data.lambda_groups:
            raise SchemaError("fig2 requires lambda columns in the CSV")
        groups = data.lambda_groups
        if spec.lambda_values is not None:
            wanted = list(spec.lambda_values)
            available = [g[0]["lambda"] for g in groups]
            try:
                groups = [groups[available.index(lam)] for lam in wanted]
            except ValueError as exc:
                raise SchemaError(f"lambda value not present in CSV: {exc}") from None
        fig, axes = plt.subplots(1, len(groups), figsize=(4 * len(groups), 4), squeeze=False)
        total_clipped = 0
        for ax, group in zip(axes[0], groups):
            lam = group[0]["lambda"]
            y = [g["P_lambda"] / g["Q_lambda"] if g["Q_lambda"] != 0 else math.nan
                 for g in group]
            points, clipped = _scatter_points(data.rows, y, spec.axis_max)
            total_clipped += clipped
            _draw_panel(ax, points, spec.axis_max, f"lambda = {lam:g}")
            plotted[f"lambda={lam:g}"] = points
        axes[0][0].set_ylabel("P_lambda/Q_lambda")
        if total_clipped:
            fig.text(0.01, 0.01,
                     f"{total_clipped} points outside [0, {spec.axis_max}]^2 not shown",
                     fontsize=7)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return plotted


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--input", required=True, help="CSV from the qys CLI")
    parser.add_argument("--panel", required=True, choices=PANELS)
    parser.add_argument("--output", required=True, help="image file path")
    parser.add_argument("--lambdas", default=None,
                        help="comma-separated lambda values to plot (fig2 only)")
    parser.add_argument("--axis-max", type=float, default=3.0)
    args = parser.parse_args(argv)
    lambdas = None
    if args.lambdas:
        lambdas = tuple(float(tok) for tok in args.lambdas.split(","))
    spec = FigureSpec(input_csv=args.input, panel=args.panel, output=args.output,
                      lambda_values=lambdas, axis_max=args.axis_max)
    try:
        render(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

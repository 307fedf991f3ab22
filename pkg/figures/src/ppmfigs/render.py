"""Render sweep figures from ppmsched result CSVs.

The CSV schema is the single interface to the scheduler: nothing is
recomputed here beyond plain aggregation of the rows (mean, min, max), so
the CSV stays the single source of truth. Four figure kinds:

* ``param-sweep`` - mean depth reduction per strategy against one varying
  instance parameter (density, qubits or input depth; auto-detected).
* ``passes``      - mean depth reduction against the reshuffle pass count.
* ``benchmarks``  - one bar per instance per strategy.
* ``ports``       - depth and weight reduction against the port budget,
  mean with min/max error bars.

Usage: ``ppm-render --csv results.csv --figure ports --out ports.png``.
Every renderer returns the exact data series it plotted, so callers and
tests can check the plot against the CSV.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

FIGURES = ("param-sweep", "passes", "benchmarks", "ports")

_NUMERIC_INT = ("seed", "n_qubits", "n_ppms", "bx", "bz", "passes", "depth", "baseline_depth",
                "total_weight", "baseline_weight")
_NUMERIC_FLOAT = ("density", "depth_reduction_pct", "weight_reduction_pct", "runtime_ms")
REQUIRED_COLUMNS = ("strategy",) + _NUMERIC_INT + _NUMERIC_FLOAT

_SWEEP_AXES = ("density", "n_qubits", "n_ppms")


class SchemaError(ValueError):
    """The CSV does not carry the expected result columns."""


def load_results(csv_path: str | Path) -> list[dict]:
    """Read result rows, coercing numeric columns."""
    with open(csv_path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise SchemaError(f"missing column: {column}")
        rows = []
        for record in reader:
            row = dict(record)
            for name in _NUMERIC_INT:
                row[name] = int(record[name])
            for name in _NUMERIC_FLOAT:
                row[name] = float(record[name])
            rows.append(row)
    if not rows:
        raise ValueError(f"no data rows in {csv_path}; nothing to plot")
    return rows


def _strategies(rows: list[dict]) -> list[str]:
    seen: list[str] = []
    for row in rows:
        if row["strategy"] not in seen:
            seen.append(row["strategy"])
    return seen


def _grouped_stats(rows: list[dict], x_column: str, y_column: str) -> dict:
    """Per-strategy x -> (mean, min, max) of y, x sorted ascending."""
    series: dict[str, dict] = {}
    for strategy in _strategies(rows):
        strat_rows = [r for r in rows if r["strategy"] == strategy]
        xs = sorted({r[x_column] for r in strat_rows})
        mean, low, high = [], [], []
        for x in xs:
            values = np.array(
                [r[y_column] for r in strat_rows if r[x_column] == x], dtype=float
            )
            mean.append(float(np.mean(values)))
            low.append(float(np.min(values)))
            high.append(float(np.max(values)))
        series[strategy] = {"x": xs, "mean": mean, "min": low, "max": high}
    return series


def detect_sweep_axis(rows: list[dict]) -> str:
    """The instance column that actually varies across the rows."""
    for column in _SWEEP_AXES:
        if len({r[column] for r in rows}) > 1:
            return column
    return _SWEEP_AXES[0]


def param_sweep_series(rows: list[dict], axis: str | None = None) -> dict:
    axis = axis or detect_sweep_axis(rows)
    if axis not in _SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {_SWEEP_AXES}")
    return {"axis": axis, "series": _grouped_stats(rows, axis, "depth_reduction_pct")}


def passes_series(rows: list[dict]) -> dict:
    return {"axis": "passes", "series": _grouped_stats(rows, "passes", "depth_reduction_pct")}


def benchmarks_series(rows: list[dict]) -> dict:
    """Bars per instance, instances keyed by (qubits, measurements, seed)."""
    labels: list[str] = []
    keys: list[tuple] = []
    for row in rows:
        key = (row["n_qubits"], row["n_ppms"], row["seed"])
        if key not in keys:
            keys.append(key)
            labels.append(f"q{row['n_qubits']}-m{row['n_ppms']}-{len(keys) - 1}")
    series = {}
    for strategy in _strategies(rows):
        bars = []
        for key in keys:
            values = np.array(
                [
                    r["depth_reduction_pct"]
                    for r in rows
                    if r["strategy"] == strategy
                    and (r["n_qubits"], r["n_ppms"], r["seed"]) == key
                ],
                dtype=float,
            )
            bars.append(float(np.mean(values)) if values.size else 0.0)
        series[strategy] = bars
    return {"labels": labels, "series": series}


def ports_series(rows: list[dict]) -> dict:
    return {
        "depth": _grouped_stats(rows, "bx", "depth_reduction_pct"),
        "weight": _grouped_stats(rows, "bx", "weight_reduction_pct"),
    }


def _plot_lines(ax, series: dict, ylabel: str, xlabel: str, error_bars: bool = False):
    for strategy, data in series.items():
        if error_bars:
            lower = [m - lo for m, lo in zip(data["mean"], data["min"])]
            upper = [hi - m for m, hi in zip(data["mean"], data["max"])]
            ax.errorbar(
                data["x"], data["mean"], yerr=[lower, upper],
                marker="o", capsize=3, label=strategy,
            )
        else:
            ax.plot(data["x"], data["mean"], marker="o", label=strategy)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()


_AXIS_LABELS = {
    "density": "Pauli density",
    "n_qubits": "Qubits",
    "n_ppms": "Input depth (measurements)",
    "passes": "Reshuffle passes",
}


def render(
    csv_path: str | Path,
    figure: str,
    out_path: str | Path,
    axis: str | None = None,
) -> dict:
    """Render one figure kind to ``out_path`` and return the plotted series."""
    if figure not in FIGURES:
        raise ValueError(f"unknown figure kind {figure!r}; expected one of {FIGURES}")
    rows = load_results(csv_path)

    if figure == "param-sweep":
        data = param_sweep_series(rows, axis)
        fig, ax = plt.subplots(figsize=(6, 4))
        _plot_lines(ax, data["series"], "Depth reduction (%)", _AXIS_LABELS[data["axis"]])
        ax.set_title("Depth reduction across the parameter sweep")
    elif figure == "passes":
        data = passes_series(rows)
        fig, ax = plt.subplots(figsize=(6, 4))
        _plot_lines(ax, data["series"], "Depth reduction (%)", _AXIS_LABELS["passes"])
        ax.set_title("Sensitivity to reshuffle passes")
    elif figure == "benchmarks":
        data = benchmarks_series(rows)
        fig, ax = plt.subplots(figsize=(max(6, len(data["labels"])), 4))
        positions = np.arange(len(data["labels"]))
        strategies = list(data["series"])
        width = 0.8 / max(1, len(strategies))
        for k, strategy in enumerate(strategies):
            ax.bar(
                positions + (k - (len(strategies) - 1) / 2) * width,
                data["series"][strategy],
                width=width,
                label=strategy,
            )
        ax.set_xticks(positions)
        ax.set_xticklabels(data["labels"], rotation=45, ha="right")
        ax.set_ylabel("Depth reduction (%)")
        ax.set_title("Depth reduction per instance")
        ax.grid(True, axis="y", alpha=0.3)
        ax.legend()
    else:  # ports
        data = ports_series(rows)
        fig, (ax_depth, ax_weight) = plt.subplots(2, 1, figsize=(6, 7), sharex=True)
        _plot_lines(ax_depth, data["depth"], "Depth reduction (%)",
                    "Max X/Z ports", error_bars=True)
        _plot_lines(ax_weight, data["weight"], "Weight reduction (%)",
                    "Max X/Z ports", error_bars=True)
        ax_depth.set_title("Performance under varying port budgets (min/max bars)")

    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return data


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ppm-render", description="Render figures from ppmsched result CSVs."
    )
    parser.add_argument("--csv", required=True, type=Path)
    parser.add_argument("--figure", required=True, choices=FIGURES)
    parser.add_argument("--out", required=True, type=Path)
    parser.add_argument(
        "--axis", choices=_SWEEP_AXES, default=None,
        help="sweep column for param-sweep (auto-detected when omitted)",
    )
    args = parser.parse_args(argv)
    try:
        render(args.csv, args.figure, args.out, axis=args.axis)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

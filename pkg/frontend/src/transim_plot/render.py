"""Panel renderers: heatmaps for 2-D sweeps, line plots, scatter with
fit overlays, and bar summaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import SchemaError, read_columns, read_fit_json, read_sweep, read_trajectory

PANEL_TYPES = ("map", "lines", "scatter_fit", "trajectory", "bars")


@dataclass(frozen=True)
class PlotSpec:
    scenario: str
    panel: str  # one of PANEL_TYPES
    inputs: tuple[str, ...]  # CSV paths (first is primary), optional fit JSON
    output: str
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.panel not in PANEL_TYPES:
            raise ValueError(f"unknown panel type {self.panel!r}")
        if not self.inputs:
            raise ValueError("spec needs at least one input file")


def render(spec: PlotSpec) -> str:
    """Render one panel to a raster image; returns the output path."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2), dpi=130)
    try:
        _PANELS[spec.panel](ax, fig, spec)
        ax.set_title(spec.title or spec.scenario)
        if spec.x_label:
            ax.set_xlabel(spec.x_label)
        if spec.y_label:
            ax.set_ylabel(spec.y_label)
        out = Path(spec.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.tight_layout()
        fig.savefig(out)
    finally:
        plt.close(fig)
    return str(out)


def _panel_map(ax, fig, spec):
    control, probe, grid = read_sweep(spec.inputs[0])
    x_scale = spec.options.get("x_scale", 1e-6)
    x0 = spec.options.get("x_origin")
    if x0 is None:
        x0 = probe[len(probe) // 2]
    x = (probe - x0) * x_scale
    y = control * spec.options.get("y_scale", 1.0)
    vals = np.sqrt(grid) if spec.options.get("magnitude", False) else grid
    mesh = ax.pcolormesh(x, y, vals, shading="auto", cmap=spec.options.get("cmap", "viridis"))
    fig.colorbar(mesh, ax=ax, label=spec.options.get("cbar_label", ""))


def _panel_lines(ax, fig, spec):
    control, probe, grid = read_sweep(spec.inputs[0])
    x = probe * spec.options.get("x_scale", 1.0)
    for c, row in zip(control, grid):
        ax.plot(x, row, lw=1.2, label=f"{c * spec.options.get('label_scale', 1.0):.3g}")
    if len(control) > 1:
        ax.legend(fontsize=7, title=spec.options.get("legend_title", ""))


def _panel_trajectory(ax, fig, spec):
    for path in spec.inputs:
        t, modes = read_trajectory(path)
        stem = Path(path).stem
        for label, occ in modes.items():
            ax.plot(t * 1e9, occ, lw=1.2, label=f"{stem}:{label}")
    ax.legend(fontsize=7)


def _panel_scatter_fit(ax, fig, spec):
    opts = spec.options
    cols = read_columns(spec.inputs[0], opts["columns"])
    xcol, ycol = opts["columns"][:2]
    x = cols[xcol] * opts.get("x_scale", 1.0)
    y = cols[ycol] * opts.get("y_scale", 1.0)
    err_col = opts.get("error_column")
    if err_col and err_col in cols:
        ax.errorbar(x, y, yerr=cols[err_col] * opts.get("y_scale", 1.0),
                    fmt="o", ms=4, capsize=2, label="data")
    else:
        ax.plot(x, y, "o", ms=4, label=ycol)
    for extra in opts.get("extra_series", []):
        if extra not in cols:
            raise SchemaError(
                f"{Path(spec.inputs[0]).name}: missing column {extra!r}"
            )
        ax.plot(x, cols[extra] * opts.get("y_scale", 1.0), ".", ms=3, label=extra)
    if opts.get("log_x"):
        ax.set_xscale("log")

    overlay = opts.get("overlay")
    if overlay and len(spec.inputs) > 1:
        fit = read_fit_json(spec.inputs[1])["params"]
        xs = np.geomspace(x.min(), x.max(), 300) if opts.get("log_x") else np.linspace(
            x.min(), x.max(), 300
        )
        ax.plot(xs, _OVERLAYS[overlay](xs / opts.get("x_scale", 1.0), fit)
                * opts.get("y_scale", 1.0), "-", lw=1.5, label="fit")
    ax.legend(fontsize=8)


def _panel_bars(ax, fig, spec):
    opts = spec.options
    cols = read_columns(spec.inputs[0], opts["columns"])
    labels = cols[opts["columns"][0]]
    values = cols[opts["columns"][1]]
    err_col = opts.get("error_column")
    errs = cols.get(err_col) if err_col else None
    pos = np.arange(len(labels))
    ax.bar(pos, values.astype(float), yerr=errs, capsize=3)
    ax.set_xticks(pos)
    ax.set_xticklabels([str(l) for l in labels], rotation=30, ha="right", fontsize=8)


def _overlay_recovery(rates, params):
    """Relative pre-pulse noise vs repetition rate, normalized at 50 kHz."""
    tau, n_heat, n_base = params["tau"], params["n_heat"], params["n_base"]

    def level(r):
        x = np.exp(-1.0 / (r * tau))
        return n_base + n_heat * x / (1.0 - x)

    return level(np.asarray(rates, dtype=float)) / level(50e3)


def _overlay_quadratic(currents, params):
    return params["omega0"] - params["c2"] * np.asarray(currents, dtype=float) ** 2


_OVERLAYS = {
    "recovery": _overlay_recovery,
    "quadratic": _overlay_quadratic,
}

_PANELS = {
    "map": _panel_map,
    "lines": _panel_lines,
    "trajectory": _panel_trajectory,
    "scatter_fit": _panel_scatter_fit,
    "bars": _panel_bars,
}

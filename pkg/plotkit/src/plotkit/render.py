"""Pure figure rendering: same CSV in, byte-identical image out."""

from __future__ import annotations

import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import LogNorm  # noqa: E402

from .spec import FigureSpec, SchemaError, load_table  # noqa: E402

#: rcParams pinned so output bytes do not depend on the user's config.
_RC = {
    "figure.figsize": (6.4, 4.8),
    "font.family": "DejaVu Sans",
    "font.size": 10.0,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.bbox": "standard",
    "path.simplify": False,
}

#: Fixed PNG metadata; the default embeds the matplotlib version string.
_METADATA = {"Software": "plotkit"}


@dataclass(frozen=True)
class RenderResult:
    output_image: str
    kind: str
    n_rows: int       # CSV data rows consumed (after dropping unusable ones)
    n_elements: int   # curves for line plots, markers for scatter, 1 per mesh


def _float(row: dict[str, str], col: str, path: str) -> float:
    try:
        return float(row[col])
    except ValueError as exc:
        raise SchemaError(
            f"{path}: column {col!r} holds non-numeric value "
            f"{row[col]!r}") from exc


def _finish(fig, ax, spec: FigureSpec, default_xlabel: str,
            default_ylabel: str, default_title: str) -> None:
    ax.set_xlabel(spec.xlabel or default_xlabel)
    ax.set_ylabel(spec.ylabel or default_ylabel)
    ax.set_title(spec.title or default_title)
    if spec.logx:
        ax.set_xscale("log")
    if spec.logy:
        ax.set_yscale("log")
    fig.savefig(spec.output_image, dpi=spec.dpi, metadata=_METADATA)
    plt.close(fig)


def _render_ratio_curve(spec: FigureSpec, rows: list[dict]) -> RenderResult:
    series: dict[tuple[str, str], list[tuple[float, float]]] = {}
    used = 0
    for row in rows:
        route = row["route"]
        if route.endswith(":unavailable"):
            continue
        tau = _float(row, "tau", spec.input_csv)
        ratio = _float(row, "ratio_to_laplace", spec.input_csv)
        if math.isnan(ratio):
            continue
        series.setdefault((row["eta"], route), []).append((tau, ratio))
        used += 1
    if not series:
        raise SchemaError(f"{spec.input_csv}: no plottable ratio_curve rows")
    fig, ax = plt.subplots()
    for (eta, route), pts in sorted(series.items()):
        pts.sort()
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker="o", label=f"eta={float(eta):g} {route}")
    ax.axhline(1.0, color="0.4", linewidth=0.8, linestyle="--")
    ax.legend(fontsize=8)
    _finish(fig, ax, spec, "tau", "ratio to steepest-descent value",
            "S-transform route ratio convergence")
    return RenderResult(spec.output_image, spec.kind, used, len(series))


def _pivot(spec: FigureSpec, rows: list[dict], field: str):
    ts = sorted({_float(r, "t", spec.input_csv) for r in rows})
    thetas = sorted({_float(r, "theta", spec.input_csv) for r in rows})
    grid = np.full((len(ts), len(thetas)), np.nan)
    ti = {v: i for i, v in enumerate(ts)}
    hi = {v: i for i, v in enumerate(thetas)}
    for r in rows:
        grid[ti[float(r["t"])], hi[float(r["theta"])]] = _float(
            r, field, spec.input_csv)
    return np.asarray(thetas), np.asarray(ts), grid


def _render_heatmap(spec: FigureSpec, rows: list[dict],
                    field: str, title: str) -> RenderResult:
    if not rows:
        raise SchemaError(f"{spec.input_csv}: no data rows")
    thetas, ts, grid = _pivot(spec, rows, field)
    fig, ax = plt.subplots()
    norm = None
    if spec.log_color:
        positive = grid[np.isfinite(grid) & (grid > 0)]
        if positive.size == 0:
            raise SchemaError(
                f"{spec.input_csv}: log_color needs positive {field!r} values")
        norm = LogNorm(vmin=positive.min(), vmax=positive.max())
    mesh = ax.pcolormesh(thetas, ts, grid, shading="nearest",
                         cmap="viridis", norm=norm)
    fig.colorbar(mesh, ax=ax, label=field)
    ax.grid(False)
    _finish(fig, ax, spec, "theta", "t", title)
    return RenderResult(spec.output_image, spec.kind, len(rows), 1)


def _render_nodal_overlay(spec: FigureSpec, rows: list[dict]) -> RenderResult:
    if not rows:
        raise SchemaError(f"{spec.input_csv}: no data rows")
    xs = [_float(r, "w_re", spec.input_csv) for r in rows]
    ys = [_float(r, "w_im", spec.input_csv) for r in rows]
    ms = [int(r["multiplicity"]) for r in rows]
    fig, ax = plt.subplots()
    sc = ax.scatter(xs, ys, s=[36 * m for m in ms], c=ms,
                    cmap="plasma", vmin=1, vmax=max(max(ms), 2),
                    edgecolors="black", linewidths=0.6)
    fig.colorbar(sc, ax=ax, label="multiplicity")
    ax.set_aspect("equal", adjustable="datalim")
    _finish(fig, ax, spec, "Re w", "Im w", "nodal zeros on slice")
    return RenderResult(spec.output_image, spec.kind, len(rows), len(rows))


def render(spec: FigureSpec) -> RenderResult:
    """Render one figure; deterministic for identical input bytes."""
    rows = load_table(spec.input_csv, spec.kind)
    with plt.rc_context(_RC):
        if spec.kind == "ratio_curve":
            return _render_ratio_curve(spec, rows)
        if spec.kind == "growth_heatmap":
            return _render_heatmap(
                spec, rows, "normalized",
                "normalized growth sqrt(tau)|u|^2 exp(tau B0)")
        if spec.kind == "b0_heatmap":
            return _render_heatmap(spec, rows, "B0", "B0 over (t, theta)")
        return _render_nodal_overlay(spec, rows)

"""Deterministic heatmap rendering for landscapes and circle-pair scans."""
from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .angles import format_angle  # noqa: E402
from .chsh import TSIRELSON, CirclePairScan, LandscapeGrid  # noqa: E402


def _png(fig) -> bytes:
    buf = io.BytesIO()
    # no Software/date metadata so identical inputs give identical bytes
    fig.savefig(buf, format="png", dpi=100, metadata={"Software": None})
    plt.close(fig)
    return buf.getvalue()


def _pi_ticks(ax, values, axis):
    ticks = np.linspace(values[0], values[-1], 5)
    labels = [format_angle(t) for t in ticks]
    if axis == "x":
        ax.set_xticks(ticks, labels)
    else:
        ax.set_yticks(ticks, labels)


def landscape_png(grid: LandscapeGrid, title: str | None = None) -> bytes:
    """Signed S on a diverging palette fixed to [-2 sqrt 2, 2 sqrt 2], with |S| = 2 contours."""
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    # rows of s_values are t_b (x axis), columns t_b' (y axis)
    mesh = ax.pcolormesh(grid.axis1, grid.axis2, grid.s_values.T, cmap="RdBu_r",
                         vmin=-TSIRELSON, vmax=TSIRELSON, shading="nearest")
    ax.contour(grid.axis1, grid.axis2, grid.s_values.T, levels=[-2.0, 2.0],
               colors="k", linewidths=1.0)
    fig.colorbar(mesh, ax=ax, label="S")
    name = grid.circle_b.param_name
    ax.set_xlabel(f"{name}_b")
    ax.set_ylabel(f"{name}_b'")
    _pi_ticks(ax, grid.axis1, "x")
    _pi_ticks(ax, grid.axis2, "y")
    ax.set_title(title or f"{grid.state or ''} {grid.circle_a.label()}-{grid.circle_b.label()}")
    fig.tight_layout()
    return _png(fig)


def scan_png(scan: CirclePairScan, title: str | None = None) -> bytes:
    """max |S| over circle orientations on [2, 2 sqrt 2], with the |S| = 2 + 1e-6 contour."""
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    mesh = ax.pcolormesh(scan.angles_a, scan.angles_b, scan.s_max.T, cmap="viridis",
                         vmin=2.0, vmax=TSIRELSON, shading="nearest")
    if scan.s_max.max() > 2 + 1e-6 and scan.s_max.min() < 2 + 1e-6:
        ax.contour(scan.angles_a, scan.angles_b, scan.s_max.T, levels=[2 + 1e-6],
                   colors="w", linewidths=1.0)
    fig.colorbar(mesh, ax=ax, label="max |S|")
    na = "phi_A" if scan.panel[0] == "z" else "theta_A"
    nb = "phi_B" if scan.panel[1] == "z" else "theta_B"
    ax.set_xlabel(na)
    ax.set_ylabel(nb)
    _pi_ticks(ax, scan.angles_a, "x")
    _pi_ticks(ax, scan.angles_b, "y")
    ax.set_title(title or f"{scan.state or ''} panel {scan.panel}")
    fig.tight_layout()
    return _png(fig)

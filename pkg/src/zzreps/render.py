"""Barcode rendering: plain-text lines and matplotlib SVG figures.

SVG bytes depend only on the report: the figure is drawn on a bare
``Figure`` (no pyplot state), the SVG id salt is fixed and the date
metadata is suppressed.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Tuple

import matplotlib

matplotlib.use("Agg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .tracker import Interval  # noqa: E402

BASE_WIDTH = 1.5
DIM_COLORS = {0: "#1f77b4", 1: "#d62728", 2: "#2ca02c"}

_RC = {
    "svg.hashsalt": "zzreps",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _ordered(report) -> List[Interval]:
    return sorted(report.barcode.intervals,
                  key=lambda iv: (iv.dim, iv.birth, float("inf") if iv.death is None else iv.death))


def render_barcode_text(report) -> str:
    """One ``[b, d) dim=p size_profile=...`` line per bar, sorted by birth."""
    lines = [
        "# [b, d): alive at fine steps b..d-1; d is the step of the killing event (closed form [b, d])",
        f"# events={report.barcode.n_events} dims={','.join(map(str, report.dims))}",
    ]
    ivs = sorted(_ordered(report), key=lambda iv: (iv.birth, iv.dim, float("inf") if iv.death is None else iv.death))
    for iv in ivs:
        death = "inf" if iv.death is None else str(iv.death)
        prof = ",".join(f"{j}:{iv.sizes[j]}" for j in sorted(iv.sizes)) or "-"
        lines.append(f"[{iv.birth}, {death}) dim={iv.dim} size_profile={prof}")
    return "\n".join(lines) + "\n"


def _segments(iv: Interval, coarse, horizon: int) -> List[Tuple[float, float, int]]:
    """(x0, x1, size) pieces of one bar; sizes switch at coarse-time steps."""
    x0, x1 = iv.birth, (iv.death if iv.death is not None else horizon + 1)
    if not iv.sizes or coarse is None:
        return [(x0, x1, 0)]
    marks = sorted((c.step, iv.sizes.get(c.index)) for c in coarse if c.step > 0)
    cuts = [x0] + [s for s, _ in marks if x0 < s < x1] + [x1]
    out = []
    for a, b in zip(cuts, cuts[1:]):
        size = 0
        for s, val in marks:
            if s <= a and val is not None:
                size = val
        out.append((a, b, size))
    return out


def barcode_figure(report, width: float = 8.0, bar_height: float = 0.18) -> Figure:
    ivs = _ordered(report)
    horizon = report.barcode.n_events
    fig = Figure(figsize=(width, max(2.0, 0.8 + bar_height * len(ivs))))
    ax = fig.add_axes([0.08, 0.12, 0.9, 0.8])
    segs, widths, colors = [], [], []
    for y, iv in enumerate(ivs):
        for a, b, size in _segments(iv, report.coarse, horizon):
            segs.append([(a, y), (b, y)])
            widths.append(BASE_WIDTH * (1 + size))
            colors.append(DIM_COLORS.get(iv.dim, "#555555"))
    if segs:
        ax.add_collection(LineCollection(segs, linewidths=widths, colors=colors, capstyle="butt"))
    ax.set_xlim(0, horizon + 1)
    ax.set_ylim(-1, max(1, len(ivs)))
    ax.set_yticks([])
    ax.set_xlabel("step")
    if report.coarse:
        ticks = [c.step for c in report.coarse]
        ax.set_xticks(ticks)
        ax.set_xticklabels([f"t{c.index + 1}" for c in report.coarse], fontsize=7)
        for t in ticks:
            ax.axvline(t, color="#cccccc", linewidth=0.5, zorder=0)
    return fig


def render_barcode_svg(report, path) -> None:
    with rc_context(_RC):
        fig = barcode_figure(report)
        fig.savefig(Path(path), format="svg", metadata={"Date": None})


def svg_bytes(report) -> bytes:
    import io

    buf = io.BytesIO()
    with rc_context(_RC):
        barcode_figure(report).savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()

"""SVG rendering of a decomposed contour."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
from matplotlib.backends.backend_svg import FigureCanvasSVG  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from shapeparts.contour import Contour  # noqa: E402
from shapeparts.dominant_sets import Decomposition  # noqa: E402

# Colors repeat after twelve clusters.
PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#393b79", "#ad494a", "#637939",
]
UNASSIGNED_COLOR = "#9a9a9a"


def render_svg(contour: Contour, decomp: Decomposition, path, title: str | None = None) -> Path:
    """Draw the contour with one color per cluster and write it to ``path``.

    The output is byte-stable for identical inputs: no timestamp and a fixed
    hash salt for element ids.
    """
    path = Path(path)
    pts = contour.points
    labels = decomp.labels()

    with matplotlib.rc_context({"svg.hashsalt": "shapeparts", "svg.fonttype": "none"}):
        fig = Figure(figsize=(5, 5))
        FigureCanvasSVG(fig)
        ax = fig.add_subplot(1, 1, 1)
        closed = list(range(len(pts))) + [0]
        ax.plot(pts[closed, 0], pts[closed, 1], color="#d0d0d0", lw=0.8, zorder=1)

        free = labels == 0
        if free.any():
            ax.scatter(pts[free, 0], pts[free, 1], s=8, color=UNASSIGNED_COLOR, zorder=2, label="unassigned")
        for k, c in enumerate(decomp.clusters):
            m = c.members
            ax.scatter(
                pts[m, 0], pts[m, 1], s=12, color=PALETTE[k % len(PALETTE)], zorder=3,
                label=f"part {k + 1} (J={c.cohesiveness:.2f})",
            )
        ax.set_aspect("equal")
        ax.set_axis_off()
        if title:
            ax.set_title(title)
        if decomp.clusters or free.any():
            ax.legend(loc="upper left", bbox_to_anchor=(1.0, 1.0), fontsize="small", frameon=False)
        fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
    return path

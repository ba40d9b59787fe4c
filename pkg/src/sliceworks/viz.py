"""Static zero-set figures.

Zeros of a one-variable polynomial live on half-plane coordinates: a point
x + yI maps to (x, y) with y >= 0, a full sphere of zeros is one (x, y) mark
regardless of the unit.  The renderer draws the three families with distinct
markers and writes the figure to a file; nothing interactive.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .zeros import SPHERICAL_ZERO, ZeroSet

__all__ = ["render_zero_plot"]


def render_zero_plot(
    zeroset: ZeroSet,
    out_path: str | Path,
    title: str | None = None,
    dpi: int = 150,
) -> Path:
    """Draw the zero set on the (x, y) half-plane and save the figure.

    Returns the written path.  The extension picks the format (png, pdf, svg).
    """
    out = Path(out_path)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))

    if zeroset.real_roots:
        ax.plot(
            [r.value for r in zeroset.real_roots],
            [0.0] * len(zeroset.real_roots),
            "x", color="tab:red", markersize=9, label="real zeros",
        )
    if zeroset.isolated:
        ax.plot(
            [z.sphere[0] for z in zeroset.isolated],
            [z.sphere[1] for z in zeroset.isolated],
            "o", color="tab:blue", markersize=7, fillstyle="none",
            label="isolated zeros",
        )
    full = [s for s in zeroset.spheres if s.kind == SPHERICAL_ZERO]
    rest = [s for s in zeroset.spheres if s.kind != SPHERICAL_ZERO]
    if full:
        ax.plot(
            [s.x for s in full], [s.y for s in full],
            "o", color="tab:green", markersize=9, label="zero spheres",
        )
    if rest:
        ax.plot(
            [s.x for s in rest], [s.y for s in rest],
            "s", color="tab:gray", markersize=6, fillstyle="none",
            label="symmetrization only",
        )

    for s in zeroset.spheres:
        if s.fs_mult > 1:
            ax.annotate(f"×{s.fs_mult}", (s.x, s.y), textcoords="offset points",
                        xytext=(6, 6), fontsize=8)
    for z in zeroset.isolated:
        if z.fs_mult > 1:
            ax.annotate(f"×{z.fs_mult}", z.sphere, textcoords="offset points",
                        xytext=(6, 6), fontsize=8)

    ax.axhline(0.0, color="black", linewidth=0.6)
    ax.set_xlabel("x (real part)")
    ax.set_ylabel("y (imaginary radius)")
    ax.set_ylim(bottom=-0.1)
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    handles, _labels = ax.get_legend_handles_labels()
    if handles:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=dpi)
    plt.close(fig)
    return out

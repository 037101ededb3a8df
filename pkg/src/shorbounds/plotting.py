"""File-based rendering of the tau sweep grid."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # file output only; no display in CLI use

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_probability_surface"]


def render_probability_surface(
    rows: list[tuple[int, int, Fraction]], path: str | Path, dpi: int = 150
) -> Path:
    """Render the (tau_p, tau_q) success-probability grid as a surface plot."""
    taus_p = sorted({tp for tp, _, _ in rows})
    taus_q = sorted({tq for _, tq, _ in rows})
    z = np.empty((len(taus_q), len(taus_p)))
    for tp, tq, prob in rows:
        z[taus_q.index(tq), taus_p.index(tp)] = float(prob)
    x, y = np.meshgrid(taus_p, taus_q)

    fig = plt.figure(figsize=(8, 6))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(x, y, z, cmap="viridis", edgecolor="k", linewidth=0.3, antialiased=True)
    ax.set_xlabel(r"$\tau_p$")
    ax.set_ylabel(r"$\tau_q$")
    ax.set_zlabel("conditional success probability")
    ax.set_title("Success probability of the order-based gcd split")
    ax.set_zlim(0.5, 1.0)
    ax.view_init(elev=25, azim=-135)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=dpi)
    plt.close(fig)
    return out

"""Rendering of the mixing-weight trend figure."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["render_lambda_star_figure"]


def render_lambda_star_figure(dims, lambda_stars, optima, path):
    """Plot lambda* of the single-basis construction against the cap 1/sqrt(d+1).

    Writes the figure to ``path`` (format chosen by the extension).
    """
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    ax.plot(dims, optima, "o--", color="0.45", label=r"$1/\sqrt{d+1}$")
    ax.plot(dims, lambda_stars, "s-", color="C0", label=r"$\lambda^*$ (construction 2)")
    ax.set_xlabel("dimension $d$")
    ax.set_ylabel("largest admissible mixing weight")
    ax.set_xticks(list(dims))
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

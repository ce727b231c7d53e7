"""Rendering for the figures subcommand (always through the Agg backend, so
no display is ever required)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_SERIES_LABEL = {
    "bertrand": "P(chord <= R)",
    "mean": "mean chord length",
    "variance": "chord length variance",
}


def render_series(path: str, kind: str, pairs) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot([n for n, _ in pairs], [v for _, v in pairs], marker="o", markersize=3)
    ax.set_xlabel("dimension N")
    ax.set_ylabel(_SERIES_LABEL[kind])
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_curves(path: str, kind: str, grid, columns) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for dim, values in columns:
        ax.plot(grid, values, label=f"N={dim}")
    ax.set_xlabel("chord length d")
    ax.set_ylabel("F(d)" if kind == "cdf-curves" else "f(d)")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

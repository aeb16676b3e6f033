"""Matplotlib figures for the CLI report paths."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .oracle import OracleGraph  # noqa: E402


def save_nonhyp_figure(rows: list[dict], path: str) -> None:
    """Growth of the long side and of the thinness bound against n."""
    ns = [row["n"] for row in rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(ns, [row["d_uw"] for row in rows], "o-", color="black", label="d(u, w)")
    ax.plot(
        ns,
        [row["thinness"] for row in rows],
        "s--",
        color="tab:red",
        label="thinness bound",
    )
    ax.plot(ns, [row["d_uv"] for row in rows], "^:", color="tab:blue", label="d(u, v)")
    ax.set_xlabel("n")
    ax.set_ylabel("flip distance")
    ax.set_xticks(ns)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_oracle_figure(graph: OracleGraph, path: str) -> None:
    """Flip graph of the convex polygon on a circular layout."""
    count = len(graph.vertices)
    pos = {}
    for i in range(count):
        t = 2.0 * math.pi * i / count
        pos[i] = (math.cos(t), math.sin(t))
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    for i, j in graph.edge_index_list():
        ax.plot(
            [pos[i][0], pos[j][0]],
            [pos[i][1], pos[j][1]],
            color="0.6",
            linewidth=0.8,
            zorder=1,
        )
    ax.scatter(
        [pos[i][0] for i in range(count)],
        [pos[i][1] for i in range(count)],
        s=28,
        color="black",
        zorder=2,
    )
    ax.set_title(f"flip graph of the {graph.n}-gon ({count} triangulations)")
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

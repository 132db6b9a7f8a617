"""Deterministic figure rendering for reproduction reports.

Both figures derive from deterministic constructions, use the Agg backend,
and strip the PNG timestamp, so repeated runs produce identical bytes.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .constructions import factor_witness, ut_separating_pair
from .tropical import CompoundDigraph
from .words import expanded_length

SAVE_KW = {"dpi": 150, "metadata": {"Date": None}}


def identity_growth_figure(path: str | Path, max_n: int = 8) -> list[int]:
    """Side length of the triangular separating identity against n."""
    ns = list(range(1, max_n + 1))
    lengths = [
        expanded_length(ut_separating_pair(n).identity.lhs) for n in ns
    ]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogy(ns, lengths, marker="o", color="tab:blue")
    for n, length in zip(ns, lengths):
        ax.annotate(
            str(length), (n, length), textcoords="offset points",
            xytext=(0, 7), ha="center", fontsize=8,
        )
    ax.set_xlabel("dimension n")
    ax.set_ylabel("side length (letters)")
    ax.set_title("Growth of the separating identities")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **SAVE_KW)
    plt.close(fig)
    return lengths


def witness_digraph_figure(path: str | Path, word: str = "bab") -> int:
    """Labelled digraph of the factor witness for ``word``."""
    fw = factor_witness(word)
    graph = CompoundDigraph.from_matrices(fw.a, fw.b)
    n = fw.dim
    xs = {i: float(i - 1) for i in range(1, n + 1)}
    fig, ax = plt.subplots(figsize=(1.8 * n, 3.2))
    for i in range(1, n + 1):
        ax.add_patch(plt.Circle((xs[i], 0.0), 0.12, fill=False, color="black"))
        ax.text(xs[i], 0.0, str(i), ha="center", va="center", fontsize=10)
    loop_slots: dict[int, int] = {}
    for e in sorted(graph.edges, key=lambda e: (e.src, e.dst, e.label)):
        if e.src == e.dst:
            slot = loop_slots.get(e.src, 0)
            loop_slots[e.src] = slot + 1
            ax.text(
                xs[e.src], 0.30 + 0.22 * slot,
                f"{e.label}: {e.weight}",
                ha="center", va="bottom", fontsize=8, color="tab:gray",
            )
        else:
            rad = 0.25 if e.label == "a" else -0.25
            ax.annotate(
                "", xy=(xs[e.dst] - 0.14, 0.0), xytext=(xs[e.src] + 0.14, 0.0),
                arrowprops={
                    "arrowstyle": "->",
                    "connectionstyle": f"arc3,rad={rad}",
                    "color": "tab:blue" if e.label == "a" else "tab:red",
                },
            )
            mid = (xs[e.src] + xs[e.dst]) / 2
            ax.text(
                mid, math.copysign(0.30, rad),
                f"{e.label}: {e.weight}",
                ha="center", va="center", fontsize=8,
                color="tab:blue" if e.label == "a" else "tab:red",
            )
    ax.set_xlim(-0.6, n - 0.4)
    ax.set_ylim(-0.9, 1.1)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"Factor witness digraph for {word!r}")
    fig.tight_layout()
    fig.savefig(path, **SAVE_KW)
    plt.close(fig)
    return len(graph.edges)

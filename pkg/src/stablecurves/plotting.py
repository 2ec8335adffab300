"""Figure rendering for trees: single drawings, galleries, count charts.

Uses the non-interactive matplotlib backend; every function returns figures
or writes files and nothing ever pops up a window.  Layout is a radial
wedge embedding: each subtree gets an angular span proportional to its leaf
count, which keeps small trees readable without any iterative solver.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .trees import MarkedTree, enumerate_trees, sample_tree

__all__ = [
    "layout_tree",
    "draw_tree",
    "save_tree_image",
    "counts_figure",
    "gallery_figure",
    "write_report",
]


def layout_tree(t: MarkedTree) -> dict[int, tuple[float, float]]:
    """Plane positions for every vertex, rooted at the smallest leaf."""
    pos = {0: (0.0, 0.0)}
    if t.vertex_count == 1:
        return pos

    def leaf_count(u: int, parent: int) -> int:
        if t.is_leaf(u):
            return 1
        return sum(leaf_count(w, u) for w in t.neighbors(u) if w != parent)

    def place(u: int, parent: int, lo: float, hi: float) -> None:
        theta = (lo + hi) / 2
        px, py = pos[parent]
        pos[u] = (px + math.cos(theta), py + math.sin(theta))
        children = [w for w in t.neighbors(u) if w != parent]
        if not children:
            return
        weights = [leaf_count(w, u) for w in children]
        total = sum(weights)
        start = lo
        for w, weight in zip(children, weights):
            span = (hi - lo) * weight / total
            place(w, u, start, start + span)
            start += span

    place(t.neighbors(0)[0], 0, 0.0, 2 * math.pi)
    return pos


def draw_tree(t: MarkedTree, ax=None, label_size: int = 9):
    """Draw edges, internal dots and leaf labels onto an axes; returns it."""
    if ax is None:
        ax = plt.gca()
    pos = layout_tree(t)
    for u, v in t.edges():
        (x0, y0), (x1, y1) = pos[u], pos[v]
        ax.plot([x0, x1], [y0, y1], color="#555555", linewidth=1.2, zorder=1)
    for v in range(t.vertex_count):
        x, y = pos[v]
        lab = t.label_of(v)
        if lab is None:
            ax.plot([x], [y], marker="o", markersize=3.5, color="#222222", zorder=2)
        else:
            ax.text(
                x,
                y,
                str(lab),
                ha="center",
                va="center",
                fontsize=label_size,
                zorder=3,
                bbox={"boxstyle": "circle", "fc": "white", "ec": "#777777", "lw": 0.8},
            )
    ax.set_aspect("equal")
    ax.axis("off")
    return ax


def save_tree_image(t: MarkedTree, path: str | Path, dpi: int = 150) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(4, 4))
    draw_tree(t, ax)
    ax.set_title(t.to_newick(), fontsize=10)
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return path


def counts_figure(counts: dict[int, int]):
    """Bar chart of enumeration sizes against the number of labels."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ns = sorted(counts)
    ax.bar([str(n) for n in ns], [counts[n] for n in ns], color="#4878a8")
    if max(counts.values()) >= 100:
        ax.set_yscale("log")
    for n in ns:
        ax.annotate(
            str(counts[n]),
            (str(n), counts[n]),
            textcoords="offset points",
            xytext=(0, 2),
            ha="center",
            fontsize=8,
        )
    ax.set_xlabel("highest leaf label n")
    ax.set_ylabel("trees")
    ax.set_title("trees on leaves 0..n")
    fig.tight_layout()
    return fig


def gallery_figure(items: list[MarkedTree], cols: int = 4, title: str | None = None):
    """Small-multiple grid of tree drawings, row-major."""
    rows = max(1, (len(items) + cols - 1) // cols)
    fig, axes = plt.subplots(rows, cols, figsize=(2.4 * cols, 2.4 * rows))
    flat = axes.ravel() if hasattr(axes, "ravel") else [axes]
    for ax in flat:
        ax.axis("off")
    for ax, t in zip(flat, items):
        draw_tree(t, ax, label_size=8)
        ax.set_title(t.to_newick(), fontsize=7)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def write_report(
    out_dir: str | Path, n_max: int, samples: int, rng, budget: int
) -> list[Path]:
    """Write the count/shape tables and their companion figures.

    Produces tree_counts.csv and tree_shapes.csv plus counts.png (the growth
    chart), gallery.png (every tree on 4 labels) and sampled.png (random
    trees at n_max).  Returns the written paths in a fixed order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    counts = {n: len(enumerate_trees(n, budget)) for n in range(n_max + 1)}
    path = out / "tree_counts.csv"
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n", "count"])
        for n in sorted(counts):
            writer.writerow([n, counts[n]])
    written.append(path)

    path = out / "tree_shapes.csv"
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n", "internal_vertices", "count"])
        for n in range(n_max + 1):
            shape_counts: dict[int, int] = {}
            for t in enumerate_trees(n, budget):
                k = len(t.internal_vertices())
                shape_counts[k] = shape_counts.get(k, 0) + 1
            for k in sorted(shape_counts):
                writer.writerow([n, k, shape_counts[k]])
    written.append(path)

    fig = counts_figure(counts)
    path = out / "counts.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fig = gallery_figure(enumerate_trees(3), cols=4, title="all trees, labels 0..3")
    path = out / "gallery.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    sampled = [sample_tree(rng, n_max) for _ in range(samples)]
    fig = gallery_figure(sampled, cols=4, title=f"sampled trees, labels 0..{n_max}")
    path = out / "sampled.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    return written

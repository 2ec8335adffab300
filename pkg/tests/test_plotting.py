"""Rendering: layouts are sane, figures and the report land on disk."""

import math
import random

import matplotlib.pyplot as plt

from _oracles import tree_count
from stablecurves.plotting import (
    counts_figure,
    draw_tree,
    gallery_figure,
    layout_tree,
    save_tree_image,
    write_report,
)
from stablecurves.trees import MarkedTree, bipartition_tree, enumerate_trees, star


def test_layout_places_every_vertex_distinctly():
    for t in enumerate_trees(4)[:8] + [star([0]), star([0, 1])]:
        pos = layout_tree(t)
        assert set(pos) == set(range(t.vertex_count))
        assert len(set(pos.values())) == t.vertex_count
        for x, y in pos.values():
            assert math.isfinite(x) and math.isfinite(y)


def test_layout_keeps_edges_unit_length():
    t = bipartition_tree([0, 1, 2], [3, 4, 5])
    pos = layout_tree(t)
    for u, v in t.edges():
        (ux, uy), (vx, vy) = pos[u], pos[v]
        assert math.isclose(math.hypot(ux - vx, uy - vy), 1.0)


def test_draw_and_figures_build_without_axes_leak():
    before = plt.get_fignums()
    ax = draw_tree(MarkedTree.from_newick("((2,3),1,4)0;"))
    fig = ax.figure
    plt.close(fig)
    fig = counts_figure({n: tree_count(n) for n in range(5)})
    plt.close(fig)
    fig = gallery_figure(enumerate_trees(3), title="all")
    plt.close(fig)
    fig = gallery_figure([star(range(4))])  # single-axes path
    plt.close(fig)
    assert plt.get_fignums() == before


def test_save_tree_image(tmp_path):
    out = save_tree_image(star(range(5)), tmp_path / "star.png")
    assert out.stat().st_size > 500
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_write_report_contents(tmp_path):
    written = write_report(tmp_path / "rep", 4, 3, random.Random(0), 10**6)
    assert [p.name for p in written] == [
        "tree_counts.csv",
        "tree_shapes.csv",
        "counts.png",
        "gallery.png",
        "sampled.png",
    ]
    for p in written:
        assert p.exists() and p.stat().st_size > 0

    counts_rows = written[0].read_text().splitlines()
    assert counts_rows[0] == "n,count"
    got = {int(row.split(",")[0]): int(row.split(",")[1]) for row in counts_rows[1:]}
    assert got == {n: tree_count(n) for n in range(5)}

    shapes_rows = written[1].read_text().splitlines()
    assert shapes_rows[0] == "n,internal_vertices,count"
    # Shape counts per n sum to the totals; spot-check the n = 4 split,
    # where 1 star + 10 two-vertex + 15 three-vertex trees make the 26.
    per_n: dict[int, int] = {}
    n4: dict[int, int] = {}
    for row in shapes_rows[1:]:
        n, k, count = (int(x) for x in row.split(","))
        per_n[n] = per_n.get(n, 0) + count
        if n == 4:
            n4[k] = count
    assert per_n == got
    assert n4 == {1: 1, 2: 10, 3: 15}

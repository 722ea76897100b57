"""Matplotlib renderings of complexes, lattices and f-vector tables."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from mpl_toolkits.mplot3d.art3d import Poly3DCollection  # noqa: E402

from .geometry import GeometricComplex  # noqa: E402
from .polytope import Polytope  # noqa: E402
from .weak_order import HasseDiagram  # noqa: E402


def plot_complex(cx: GeometricComplex, path: str | Path) -> Path:
    """Draw a planar or spatial complex; top cells shaded, edges in black."""
    path = Path(path)
    pts = {T: tuple(float(x) for x in cx.point(T)) for T in cx.vertices}
    top = [(c, trees) for c, trees in cx.cells.items() if c.dimension == cx.ambient]
    edges = [trees for c, trees in cx.cells.items() if c.dimension == 1]
    if cx.ambient == 2:
        fig, ax = plt.subplots(figsize=(5, 5))
        for c, trees in top:
            P = Polytope.hull([cx.point(T) for T in trees])
            cyc = [tuple(float(x) for x in P.points[i]) for i in P.facets_cyclic[0]]
            ax.fill(*zip(*cyc), color="#cfe0f3", zorder=0)
        for a, b in edges:
            ax.plot(*zip(pts[a], pts[b]), color="black", lw=1, zorder=1)
        ax.scatter(*zip(*pts.values()), s=10, color="black", zorder=2)
        ax.set_aspect("equal")
        ax.axis("off")
    elif cx.ambient == 3:
        fig = plt.figure(figsize=(6, 6))
        ax = fig.add_subplot(projection="3d")
        polys = []
        for c, trees in top:
            P = Polytope.hull([cx.point(T) for T in trees])
            for cyc in P.facets_cyclic:
                polys.append([tuple(float(x) for x in P.points[i]) for i in cyc])
        ax.add_collection3d(Poly3DCollection(polys, alpha=0.08, facecolor="#4477aa", edgecolor="none"))
        for a, b in edges:
            ax.plot(*zip(pts[a], pts[b]), color="black", lw=0.6)
        xs, ys, zs = zip(*pts.values())
        ax.scatter(xs, ys, zs, s=4, color="black")
        ax.set_box_aspect((max(xs) - min(xs), max(ys) - min(ys), max(zs) - min(zs)))
        ax.set_axis_off()
    else:
        raise ValueError("complexes are drawn in two or three dimensions")
    ax.set_title("s = (" + ",".join(map(str, cx.s)) + ")")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_hasse(diagram: HasseDiagram, path: str | Path) -> Path:
    """Cover graph drawn by rank (longest chain from the bottom)."""
    path = Path(path)
    n = len(diagram.vertices)
    rank = [0] * n
    succ: dict[int, list[int]] = {i: [] for i in range(n)}
    indeg = [0] * n
    for i, j, *_ in diagram.edges:
        succ[i].append(j)
        indeg[j] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    for i in order:
        for j in succ[i]:
            rank[j] = max(rank[j], rank[i] + 1)
            indeg[j] -= 1
            if indeg[j] == 0:
                order.append(j)
    levels: dict[int, list[int]] = {}
    for i in range(n):
        levels.setdefault(rank[i], []).append(i)
    xy = {}
    for r, members in levels.items():
        for k, i in enumerate(members):
            xy[i] = (k - (len(members) - 1) / 2, r)
    fig, ax = plt.subplots(figsize=(6, 6))
    for i, j, *_ in diagram.edges:
        ax.plot(*zip(xy[i], xy[j]), color="grey", lw=0.6)
    ax.scatter(*zip(*xy.values()), s=8, color="black")
    ax.axis("off")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_f_vectors(rows: list[tuple[tuple[int, ...], list[int]]], path: str | Path) -> Path:
    """Log-scale f-vector profiles, one line per composition."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 4))
    for s, f in rows:
        ax.plot(range(len(f)), f, marker=".", lw=0.8, label=",".join(map(str, s)))
    ax.set_yscale("log")
    ax.set_xlabel("face dimension")
    ax.set_ylabel("number of faces")
    if len(rows) <= 12:
        ax.legend(fontsize=6)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path

"""Coordinates for trees and exact checks of the resulting polytopal subdivisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .core import SDecreasingTree, as_composition
from .enumeration import enumerate_trees
from .polytope import Polytope, Vec, cross, dot, sub
from .pure_intervals import enumerate_faces
from .tamari import (
    enumerate_tamari_faces,
    enumerate_tamari_trees,
    tamari_interval_members,
)

RationalPoint = tuple[Fraction, ...]


def coords_v(T: SDecreasingTree) -> RationalPoint:
    """Sum of ``card(j, i) * (e_i - e_j)`` over ``i < j``."""
    x = [Fraction(0)] * T.n
    for (j, i), v in T.inversions.items():
        x[i - 1] += v
        x[j - 1] -= v
    return tuple(x)


def coords_3d_fixed(T: SDecreasingTree) -> RationalPoint:
    """Corrected coordinates for four nodes: triple every cardinality and push the
    pairs below node 3 by an amount read from the position of 3 under the root."""
    if T.n != 4:
        raise ValueError("the corrected coordinates need exactly four nodes")
    I, s3 = T.inversions, T.s[2]
    x = [Fraction(0)] * 4
    for (j, i), v in I.items():
        w = 3 * v
        if j == 3 and v > 0:
            if v == s3:
                w += 2 * s3
            else:
                w += s3 + (I[4, 1] - I[4, 3]) + (I[4, 2] - I[4, 3])
        x[i - 1] += w
        x[j - 1] -= w
    return tuple(x)


def project(x: RationalPoint) -> Vec:
    """Coordinates in the sum-zero hyperplane.

    Three coordinates go to the basis ``(1,-1,0)``, ``(1,1,-2)``; four drop
    the last entry.  Both maps are linear isomorphisms, so volume ratios are
    preserved.
    """
    if len(x) == 3:
        return ((x[0] - x[1]) / 2, -x[2] / 2)
    if len(x) == 4:
        return tuple(x[:3])
    if len(x) == 2:
        return (x[0],)
    raise ValueError("projection implemented for two to four coordinates")


def zonotope(s) -> list[RationalPoint]:
    """Vertices of the Minkowski sum of the segments ``s(j) * [e_i, e_j]``, ``i < j``."""
    s = as_composition(s)
    n = len(s)
    gens = [(i, j) for j in range(2, n + 1) for i in range(1, j) if s[j - 1] > 0]
    sums = set()
    for pick in product((0, 1), repeat=len(gens)):
        x = [Fraction(0)] * n
        for (i, j), b in zip(gens, pick):
            x[(i if b else j) - 1] += s[j - 1]
        sums.add(tuple(x))
    pts = sorted(sums)
    if len(pts) == 1:
        return pts
    P = Polytope.hull([project(p) for p in pts])
    return sorted(pts[i] for i in P.vertices)


def zonotope_shift(s) -> RationalPoint:
    """Translation taking the zonotope onto the hull of the tree coordinates."""
    s = as_composition(s)
    return tuple(Fraction(-(j - 1) * s[j - 1]) for j in range(1, len(s) + 1))


@dataclass
class GeometricComplex:
    s: tuple[int, ...]
    vertices: dict[SDecreasingTree, RationalPoint]
    cells: dict[object, tuple[SDecreasingTree, ...]]
    ambient: int

    def point(self, T: SDecreasingTree) -> Vec:
        return project(self.vertices[T])


@dataclass
class RealizationReport:
    s: tuple[int, ...]
    kind: str
    coordinates: str
    cells_by_dimension: list[int] = field(default_factory=list)
    hull_volume: Fraction = Fraction(0)
    cell_volume_sum: Fraction = Fraction(0)
    hull_f_vector: list[int] = field(default_factory=list)
    zonotope_f_vector: list[int] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    findings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "s": list(self.s),
            "kind": self.kind,
            "coordinates": self.coordinates,
            "cells_by_dimension": self.cells_by_dimension,
            "hull_volume": str(self.hull_volume),
            "cell_volume_sum": str(self.cell_volume_sum),
            "hull_f_vector": self.hull_f_vector,
            "zonotope_f_vector": self.zonotope_f_vector,
            "passed": self.passed,
            "violations": self.violations,
            "findings": self.findings,
        }


def _key(p: Vec) -> tuple:
    return tuple(p)


def _check_cells(
    cx: GeometricComplex,
    report: RealizationReport,
    dims: dict[object, int],
    hasse_pairs: set[frozenset[SDecreasingTree]],
) -> dict[object, Polytope]:
    """Per-cell convexity, dimension and face-poset checks; also the edge graph."""
    bad = report.violations
    vsets = {c: frozenset(ts) for c, ts in cx.cells.items()}
    by_vset: dict[int, set[frozenset]] = {}
    for c, vs in vsets.items():
        by_vset.setdefault(dims[c], set()).add(vs)

    hulls = {}
    edges: set[frozenset[SDecreasingTree]] = set()
    for c, trees in cx.cells.items():
        pts = [cx.point(T) for T in trees]
        P = Polytope.hull(pts)
        hulls[c] = P
        name = getattr(c, "to_json", lambda: c)()
        if P.dim != dims[c]:
            bad.append(f"cell {name} spans dimension {P.dim}, expected {dims[c]}")
            continue
        if not P.in_convex_position:
            bad.append(f"cell {name} is not in convex position")
            continue
        for k in range(dims[c]):
            geo = {frozenset(trees[i] for i in f) for f in P.faces.get(k, set())}
            comb = {vs for vs in by_vset.get(k, set()) if vs <= vsets[c]}
            if geo != comb:
                bad.append(f"cell {name}: {k}-faces of the hull differ from its {k}-dimensional subintervals")
        for f in P.faces.get(1, set()):
            edges.add(frozenset(trees[i] for i in f))
    if edges != hasse_pairs:
        bad.append(
            f"edge graph differs from the cover graph ({len(edges)} hull edges, {len(hasse_pairs)} covers)"
        )
    return hulls


def _check_tiling(
    cx: GeometricComplex,
    report: RealizationReport,
    dims: dict[object, int],
    hulls: dict[object, Polytope],
    all_points: list[Vec],
) -> bool:
    """Exact volume additivity plus face-to-face gluing of the top cells."""
    d = cx.ambient
    top = [c for c in cx.cells if dims[c] == d and hulls[c].dim == d]
    H = Polytope.hull(all_points)
    report.hull_volume = H.volume()
    report.cell_volume_sum = sum((hulls[c].volume() for c in top), Fraction(0))
    report.hull_f_vector = H.f_vector()
    ok = report.hull_volume == report.cell_volume_sum
    if not ok:
        report.findings["volume_gap"] = str(report.hull_volume - report.cell_volume_sum)

    boundary = [frozenset(_key(H.points[i]) for i in f) for f in H.supporting_sets()]
    shared: dict[frozenset, list[tuple[object, int]]] = {}
    for c in top:
        P = hulls[c]
        centre = [sum(P.points[i][k] for i in P.vertices) / len(P.vertices) for k in range(d)]
        for f in P.faces[d - 1]:
            pts = frozenset(_key(P.points[i]) for i in f)
            # side of the cell relative to the facet's hyperplane
            side = _side(sorted(pts), centre)
            shared.setdefault(pts, []).append((c, side))
    for pts, owners in shared.items():
        on_boundary = any(pts <= b for b in boundary)
        if on_boundary and len(owners) == 1:
            continue
        if len(owners) == 2 and owners[0][1] != owners[1][1] and not on_boundary:
            continue
        ok = False
        report.findings.setdefault("bad_gluing", 0)
        report.findings["bad_gluing"] += 1
    return ok


def _side(face_pts: list[Vec], probe: list[Fraction]) -> int:
    """Sign of ``probe`` relative to the hyperplane through a codimension-one face."""
    d = len(probe)
    a = face_pts[0]
    if d == 2:
        b = next(p for p in face_pts if p != a)
        val = (b[0] - a[0]) * (probe[1] - a[1]) - (b[1] - a[1]) * (probe[0] - a[0])
    else:
        nrm = None
        for b in face_pts[1:]:
            for c in face_pts[2:]:
                cand = cross(sub(b, a), sub(c, a))
                if any(cand):
                    nrm = cand
                    break
            if nrm:
                break
        val = dot(nrm, sub(tuple(probe), a))
    return (val > 0) - (val < 0)


def _undirected_covers(trees, ascents, step) -> set[frozenset[SDecreasingTree]]:
    return {frozenset({T, step(T, a)}) for T in trees for a in ascents(T)}


def _realize(
    s,
    coords: Callable[[SDecreasingTree], RationalPoint],
    coord_name: str,
    max_trees: int | None,
) -> tuple[GeometricComplex, RealizationReport]:
    from .weak_order import rotate, tree_ascents

    s = as_composition(s)
    trees = enumerate_trees(s, max_trees)
    faces = enumerate_faces(s, max_trees)
    vertices = {T: coords(T) for T in trees}
    cells = {P: tuple(T for T in trees if P.contains_tree(T)) for P in faces}
    ambient = len(s) - 1
    cx = GeometricComplex(s, vertices, cells, ambient)
    report = RealizationReport(s, "permutahedron", coord_name)
    if len(set(vertices.values())) != len(trees):
        report.violations.append("coordinates are not injective on trees")
        return cx, report
    dims = {P: P.dimension for P in faces}
    report.cells_by_dimension = _count(dims.values())
    covers = _undirected_covers(trees, tree_ascents, rotate)
    hulls = _check_cells(cx, report, dims, covers)
    if report.violations:
        return cx, report
    all_pts = [cx.point(T) for T in trees]
    if not _check_tiling(cx, report, dims, hulls, all_pts):
        report.violations.append("top cells do not tile the hull")
    Z = Polytope.hull([project(p) for p in zonotope(s)])
    report.zonotope_f_vector = Z.f_vector()
    if coord_name == "v":
        shift = zonotope_shift(s)
        moved = {project(tuple(a + b for a, b in zip(p, shift))) for p in zonotope(s)}
        H = Polytope.hull(all_pts)
        hull_vertices = {H.points[i] for i in H.vertices}
        report.findings["hull_is_translated_zonotope"] = hull_vertices == moved
        if hull_vertices != moved:
            report.violations.append("hull of the tree coordinates is not the translated zonotope")
    elif report.hull_f_vector != report.zonotope_f_vector:
        report.violations.append("hull is not combinatorially a zonotope of the same f-vector")
    return cx, report


def _count(dims) -> list[int]:
    out: list[int] = []
    for d in dims:
        while len(out) <= d:
            out.append(0)
        out[d] += 1
    return out


def realize_2d(s, max_trees: int | None = None) -> tuple[GeometricComplex, RealizationReport]:
    s = as_composition(s)
    if len(s) != 3 or s[2] == 0:
        raise ValueError("the planar realization needs three nodes and s(3) > 0")
    return _realize(s, coords_v, "v", max_trees)


def realize_3d(s, max_trees: int | None = None) -> tuple[GeometricComplex, RealizationReport]:
    s = as_composition(s)
    if len(s) != 4 or s[3] == 0:
        raise ValueError("the spatial realization needs four nodes and s(4) > 0")
    return _realize(s, coords_3d_fixed, "fixed", max_trees)


def realize_3d_plain(s, max_trees: int | None = None) -> tuple[GeometricComplex, RealizationReport]:
    """Uncorrected coordinates in three dimensions (expected to fail convexity)."""
    s = as_composition(s)
    if len(s) != 4:
        raise ValueError("needs four nodes")
    return _realize(s, coords_v, "v", max_trees)


def associahedron_realization(s, max_trees: int | None = None) -> tuple[GeometricComplex, RealizationReport]:
    """Restrict the realization to s-Tamari trees and pure s-Tamari intervals."""
    from .tamari import tamari_ascents, tamari_rotate

    s = as_composition(s)
    if len(s) not in (3, 4) or s[-1] == 0:
        raise ValueError("needs three or four nodes and a nonzero last entry")
    coords = coords_v if len(s) == 3 else coords_3d_fixed
    trees = enumerate_tamari_trees(s, max_trees)
    faces = enumerate_tamari_faces(s, max_trees)
    vertices = {T: coords(T) for T in trees}
    cells = {P: tuple(tamari_interval_members(P)) for P in faces}
    cx = GeometricComplex(s, vertices, cells, len(s) - 1)
    report = RealizationReport(s, "associahedron", "v" if len(s) == 3 else "fixed")
    dims = {P: P.dimension for P in faces}
    report.cells_by_dimension = _count(dims.values())
    covers = _undirected_covers(trees, tamari_ascents, tamari_rotate)
    hulls = _check_cells(cx, report, dims, covers)
    if report.violations:
        return cx, report

    d = cx.ambient
    all_pts = [cx.point(T) for T in trees]
    H = Polytope.hull(all_pts)
    top = [P for P in faces if P.dimension == d]
    pure = all(any(Q.contains(P) for Q in top) for P in faces)
    tiled = H.dim == d and _check_tiling(cx, report, dims, hulls, all_pts)
    convex = pure and tiled
    report.findings["pure"] = pure
    report.findings["convex_union"] = convex

    perm = Polytope.hull([project(coords(T)) for T in enumerate_trees(s, max_trees)])
    perm_planes = _facet_directions(perm)
    if H.dim == d:
        asso_planes = _facet_directions(H)
        report.findings["shared_facets"] = len(asso_planes & perm_planes)
        report.findings["removed_facets"] = len(perm_planes - asso_planes)
        report.findings["new_facets"] = len(asso_planes - perm_planes)
    return cx, report


def _facet_directions(P: Polytope) -> set[tuple]:
    """Facet hyperplanes as normalised ``(normal, offset)`` keys."""
    out = set()
    if P.dim == 2 and len(P.points[0]) == 2:
        cyc = P.facets_cyclic[0]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            pa, pb = P.points[a], P.points[b]
            nrm = (pb[1] - pa[1], pa[0] - pb[0])
            scale = max(abs(x) for x in nrm)
            nrm = tuple(x / scale for x in nrm)
            out.add((nrm, nrm[0] * pa[0] + nrm[1] * pa[1]))
    elif P.dim == 3:
        for nrm, off in P.planes:
            out.add((nrm, off))
    return out


def _fmt(x: Fraction) -> str:
    return f"{float(x):.4f}".rstrip("0").rstrip(".")


def export_svg(cx: GeometricComplex, scale: float = 20.0, margin: float = 20.0) -> str:
    """Deterministic SVG of a planar complex: one polygon per 2-cell, one line per edge."""
    if cx.ambient != 2:
        raise ValueError("SVG export is for planar complexes")
    pts = {T: cx.point(T) for T in cx.vertices}
    if not pts:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0">\n</svg>\n'
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    x0, y1 = min(xs), max(ys)

    def screen(p: Vec) -> str:
        return f"{_fmt((p[0] - x0) * Fraction(scale) + Fraction(margin))},{_fmt((y1 - p[1]) * Fraction(scale) + Fraction(margin))}"

    width = float((max(xs) - x0) * Fraction(scale)) + 2 * margin
    height = float((y1 - min(ys)) * Fraction(scale)) + 2 * margin
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}">'
    ]
    cells = sorted(cx.cells.items(), key=lambda kv: _cell_order(kv[0]))
    for c, trees in cells:
        if _cell_dim(c) != 2:
            continue
        P = Polytope.hull([pts[T] for T in trees])
        cyc = P.facets_cyclic[0]
        poly = " ".join(screen(P.points[i]) for i in cyc)
        lines.append(f'<polygon points="{poly}" fill="#cfe0f3" stroke="none"/>')
    for c, trees in cells:
        if _cell_dim(c) != 1:
            continue
        a, b = (screen(pts[T]) for T in trees)
        (ax, ay), (bx, by) = a.split(","), b.split(",")
        lines.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="black"/>')
    for T in sorted(pts, key=str):
        x, y = screen(pts[T]).split(",")
        lines.append(f'<circle cx="{x}" cy="{y}" r="2"><title>{T}</title></circle>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _cell_dim(c) -> int:
    return c.dimension


def _cell_order(c) -> tuple:
    return (c.dimension, str(c.lower), sorted(c.ascents))


def export_scene(cx: GeometricComplex) -> tuple[dict, str]:
    """JSON scene plus a Wavefront OBJ with one group per top-dimensional cell."""
    order = sorted(cx.vertices, key=str)
    index = {T: i for i, T in enumerate(order)}
    points = [cx.point(T) for T in order]
    scene = {
        "s": list(cx.s),
        "dimension": cx.ambient,
        "vertices": [{"tree": str(T), "point": [str(x) for x in points[index[T]]]} for T in order],
        "cells": [
            {"face": c.to_json(), "dimension": c.dimension, "vertices": sorted(index[T] for T in trees)}
            for c, trees in sorted(cx.cells.items(), key=lambda kv: _cell_order(kv[0]))
            if c.dimension >= 1
        ],
    }
    obj = [f"# complex for s={','.join(map(str, cx.s))}"]
    for p in points:
        coords = list(p) + [Fraction(0)] * (3 - len(p))
        obj.append("v " + " ".join(_fmt(x) for x in coords))
    k = 0
    for c, trees in sorted(cx.cells.items(), key=lambda kv: _cell_order(kv[0])):
        if c.dimension != cx.ambient:
            continue
        k += 1
        obj.append(f"g cell{k}")
        P = Polytope.hull([points[index[T]] for T in trees])
        for cyc in P.facets_cyclic:
            obj.append("f " + " ".join(str(index[trees[i]] + 1) for i in cyc))
    return scene, "\n".join(obj) + "\n"

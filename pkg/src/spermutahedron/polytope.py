"""Exact convex hulls of small point sets in dimension at most three.

Everything runs on ``Fraction`` (or ``int``) coordinates.  Faces are reported
as frozensets of indices into the input point list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Vec = tuple[Fraction, ...]


def sub(p, q) -> Vec:
    return tuple(a - b for a, b in zip(p, q))


def dot(p, q):
    return sum(a * b for a, b in zip(p, q))


def cross(u, v) -> Vec:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def det3(u, v, w):
    return dot(u, cross(v, w))


def _pivot_columns(vectors: list[Vec]) -> tuple[list[int], list[int]]:
    """Row-reduce; return the indices of independent vectors and pivot coordinates."""
    rows: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen: list[int] = []
    for idx, v in enumerate(vectors):
        r = [Fraction(x) for x in v]
        for row, col in zip(rows, pivots):
            if r[col]:
                f = r[col] / row[col]
                r = [a - f * b for a, b in zip(r, row)]
        nz = next((j for j, x in enumerate(r) if x), None)
        if nz is not None:
            rows.append(r)
            pivots.append(nz)
            chosen.append(idx)
    return chosen, pivots


def affine_dimension(points: Sequence[Vec]) -> int:
    if not points:
        return -1
    chosen, _ = _pivot_columns([sub(p, points[0]) for p in points[1:]])
    return len(chosen)


def _chart(points: Sequence[Vec]) -> tuple[int, list[Vec]]:
    """Affine dimension and an injective coordinate projection of the points."""
    diffs = [sub(p, points[0]) for p in points[1:]]
    chosen, pivots = _pivot_columns(diffs)
    cols = sorted(pivots)
    return len(chosen), [tuple(p[c] for c in cols) for p in points]


def hull_2d(points: Sequence[Vec]) -> list[int]:
    """Strict convex hull vertices in counter-clockwise order (monotone chain)."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    if len(order) <= 2:
        return order

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and turn(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def polygon_area2(points: Sequence[Vec], cycle: Sequence[int]) -> Fraction:
    """Twice the signed area of a polygon given by a vertex cycle."""
    acc = Fraction(0)
    for i, j in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        acc += points[i][0] * points[j][1] - points[j][0] * points[i][1]
    return acc


def _hull_triangles(points: Sequence[Vec]) -> list[tuple[int, int, int]]:
    """Beneath-beyond in three dimensions; triangles oriented outwards."""
    n = len(points)
    i0 = 0
    i1 = next(i for i in range(n) if points[i] != points[i0])
    d1 = sub(points[i1], points[i0])
    i2 = next(i for i in range(n) if any(cross(d1, sub(points[i], points[i0]))))
    nrm = cross(d1, sub(points[i2], points[i0]))
    i3 = next(i for i in range(n) if dot(nrm, sub(points[i], points[i0])) != 0)
    simplex = [i0, i1, i2, i3]
    inner = tuple(sum(Fraction(points[i][k]) for i in simplex) / 4 for k in range(3))

    def normal(t):
        a, b, c = (points[i] for i in t)
        return cross(sub(b, a), sub(c, a))

    faces: set[tuple[int, int, int]] = set()
    for t in ((i0, i1, i2), (i0, i1, i3), (i0, i2, i3), (i1, i2, i3)):
        if dot(normal(t), sub(inner, points[t[0]])) > 0:
            t = (t[0], t[2], t[1])
        faces.add(t)

    for p in range(n):
        if p in simplex:
            continue
        visible = [t for t in faces if dot(normal(t), sub(points[p], points[t[0]])) > 0]
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update(((a, b), (b, c), (c, a)))
        for t in visible:
            faces.discard(t)
        for a, b in edges:
            if (b, a) not in edges:
                faces.add((a, b, p))
    return sorted(faces)


@dataclass
class Polytope:
    """Convex hull of ``points`` with its face lattice by dimension."""

    points: list[Vec]
    dim: int = -1
    vertices: frozenset[int] = frozenset()
    faces: dict[int, set[frozenset[int]]] = field(default_factory=dict)
    facets_cyclic: list[list[int]] = field(default_factory=list)
    planes: list[tuple[Vec, Fraction]] = field(default_factory=list)

    @classmethod
    def hull(cls, points: Sequence[Sequence]) -> "Polytope":
        pts = [tuple(Fraction(x) for x in p) for p in points]
        P = cls(pts)
        if not pts:
            return P
        d, chart = _chart(pts)
        P.dim = d
        if d == 0:
            P.vertices = frozenset({0})
            P.faces = {0: {frozenset({0})}}
        elif d == 1:
            key = lambda i: chart[i]
            lo, hi = min(range(len(pts)), key=key), max(range(len(pts)), key=key)
            P.vertices = frozenset({lo, hi})
            P.faces = {0: {frozenset({lo}), frozenset({hi})}, 1: {P.vertices}}
        elif d == 2:
            cyc = hull_2d(chart)
            P.vertices = frozenset(cyc)
            P.facets_cyclic = [cyc]
            P.faces = {
                0: {frozenset({i}) for i in cyc},
                1: {frozenset({a, b}) for a, b in zip(cyc, cyc[1:] + cyc[:1])},
                2: {P.vertices},
            }
        elif d == 3:
            P._hull3(chart)
        else:
            raise ValueError("hulls are implemented up to dimension three")
        return P

    def _hull3(self, chart: list[Vec]) -> None:
        groups: dict[tuple, tuple[Vec, Fraction]] = {}
        for t in _hull_triangles(chart):
            a, b, c = (chart[i] for i in t)
            nrm = cross(sub(b, a), sub(c, a))
            first = next(x for x in nrm if x)
            scale = abs(first)
            nrm = tuple(x / scale for x in nrm)
            off = dot(nrm, a)
            groups[(nrm, off)] = (nrm, off)
        faces2, faces1, cyclic, planes = set(), set(), [], []
        for nrm, off in groups.values():
            on = [i for i, p in enumerate(chart) if dot(nrm, p) == off]
            drop = max(range(3), key=lambda k: abs(nrm[k]))
            flat = [tuple(chart[i][k] for k in range(3) if k != drop) for i in on]
            cyc = [on[j] for j in hull_2d(flat)]
            cyclic.append(cyc)
            planes.append((nrm, off))
            faces2.add(frozenset(cyc))
            faces1.update(frozenset({a, b}) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
        verts = frozenset(i for f in faces2 for i in f)
        self.vertices = verts
        self.facets_cyclic = cyclic
        self.planes = planes
        self.faces = {0: {frozenset({i}) for i in verts}, 1: faces1, 2: faces2, 3: {verts}}

    @property
    def in_convex_position(self) -> bool:
        distinct = len(set(self.points)) == len(self.points)
        return distinct and self.vertices == frozenset(range(len(self.points)))

    def f_vector(self) -> list[int]:
        return [len(self.faces.get(k, ())) for k in range(self.dim + 1)]

    def volume(self) -> Fraction:
        """Volume in the ambient coordinates; requires a full-dimensional hull."""
        amb = len(self.points[0])
        if self.dim != amb:
            raise ValueError("volume needs a full-dimensional polytope")
        if amb == 1:
            xs = [p[0] for p in self.points]
            return max(xs) - min(xs)
        if amb == 2:
            return abs(polygon_area2(self.points, self.facets_cyclic[0])) / 2
        if amb == 3:
            verts = sorted(self.vertices)
            o = tuple(sum(self.points[i][k] for i in verts) / len(verts) for k in range(3))
            vol = Fraction(0)
            for cyc in self.facets_cyclic:
                a = sub(self.points[cyc[0]], o)
                for j in range(1, len(cyc) - 1):
                    b = sub(self.points[cyc[j]], o)
                    c = sub(self.points[cyc[j + 1]], o)
                    vol += abs(det3(a, b, c))
            return vol / 6
        raise ValueError("volume implemented up to dimension three")

    def supporting_sets(self) -> list[frozenset[int]]:
        """For each facet, every input point lying on its hyperplane."""
        if self.dim == 2 and len(self.points[0]) == 2:
            cyc = self.facets_cyclic[0]
            out = []
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                pa, pb = self.points[a], self.points[b]
                out.append(
                    frozenset(
                        i
                        for i, p in enumerate(self.points)
                        if (pb[0] - pa[0]) * (p[1] - pa[1]) - (pb[1] - pa[1]) * (p[0] - pa[0]) == 0
                    )
                )
            return out
        if self.dim == 3 and len(self.points[0]) == 3:
            return [
                frozenset(i for i, p in enumerate(self.points) if dot(nrm, p) == off)
                for nrm, off in self.planes
            ]
        raise ValueError("supporting sets need a full-dimensional hull in 2D or 3D")

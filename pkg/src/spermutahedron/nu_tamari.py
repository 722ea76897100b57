"""nu-trees above a lattice path, the right-flushing bijection and covering faces.

A lattice path is a word over ``N`` (north) and ``E`` (east) starting at the
origin.  Points are ``(x, y)`` pairs; row ``y`` of the region above the path
holds the points ``(0, y) .. (xmax(y), y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import networkx as nx

from .core import SDecreasingTree, as_composition
from .tamari import (
    enumerate_tamari_faces,
    enumerate_tamari_trees,
    is_s_tamari,
    tamari_ascents,
    tamari_interval_members,
    tamari_rotate,
)
from .weak_order import leq

Point = tuple[int, int]


@dataclass(frozen=True)
class LatticePath:
    steps: str

    def __post_init__(self):
        if not self.steps or set(self.steps) - {"N", "E"}:
            raise ValueError(f"path must be a nonempty word over N and E: {self.steps!r}")

    @classmethod
    def from_composition(cls, s) -> "LatticePath":
        """``N E^{s(1)} N E^{s(2)} ... N E^{s(n)}``."""
        return cls("".join("N" + "E" * m for m in as_composition(s)))

    @classmethod
    def for_tamari(cls, s) -> "LatticePath":
        """The path whose nu-trees match the s-Tamari trees (composition read backwards)."""
        return cls.from_composition(tuple(reversed(as_composition(s))))

    @property
    def width(self) -> int:
        return self.steps.count("E")

    @property
    def height(self) -> int:
        return self.steps.count("N")

    @property
    def length(self) -> int:
        return len(self.steps)

    @cached_property
    def row_ends(self) -> tuple[int, ...]:
        """Largest abscissa the path reaches at each height."""
        ends = [0] * (self.height + 1)
        x = y = 0
        for step in self.steps:
            if step == "E":
                x += 1
            else:
                y += 1
            ends[y] = x
        return tuple(ends)

    @property
    def root(self) -> Point:
        return (0, self.height)

    def __str__(self) -> str:
        return self.steps


def points_above(path: LatticePath) -> frozenset[Point]:
    return frozenset((x, y) for y, end in enumerate(path.row_ends) for x in range(end + 1))


def _above(path: LatticePath, p: Point) -> bool:
    x, y = p
    return 0 <= y <= path.height and 0 <= x <= path.row_ends[y]


def are_nu_compatible(p: Point, q: Point, path: LatticePath) -> bool:
    """Incompatible exactly when one point is strictly south-west of the other and the
    south-east corner of their box lies in the region above the path."""
    for r in (p, q):
        if not _above(path, r):
            raise ValueError(f"point {r} is not above {path}")
    (px, py), (qx, qy) = p, q
    if (px - qx) * (py - qy) <= 0:
        return True
    return not _above(path, (max(px, qx), min(py, qy)))


def compatibility_graph(path: LatticePath) -> nx.Graph:
    pts = sorted(points_above(path))
    G = nx.Graph()
    G.add_nodes_from(pts)
    G.add_edges_from((p, q) for p, q in combinations(pts, 2) if are_nu_compatible(p, q, path))
    return G


@dataclass(frozen=True)
class NuTree:
    path: LatticePath
    nodes: frozenset[Point]

    def key(self) -> tuple[Point, ...]:
        return tuple(sorted(self.nodes))

    def to_json(self) -> dict:
        return {"path": self.path.steps, "nodes": [list(p) for p in self.key()]}


def is_nu_compatible_set(path: LatticePath, nodes) -> bool:
    return all(are_nu_compatible(p, q, path) for p, q in combinations(nodes, 2))


def is_nu_tree(path: LatticePath, nodes) -> bool:
    nodes = set(nodes)
    if not is_nu_compatible_set(path, nodes):
        return False
    return all(
        any(not are_nu_compatible(p, q, path) for q in nodes)
        for p in points_above(path) - nodes
    )


def enumerate_nu_trees(path: LatticePath) -> list[NuTree]:
    """Maximal cliques of the compatibility graph."""
    trees = [NuTree(path, frozenset(c)) for c in nx.find_cliques(compatibility_graph(path))]
    return sorted(trees, key=NuTree.key)


def nu_ascents(T: NuTree) -> dict[Point, tuple[Point, Point]]:
    """Map each ascent ``q`` to its witnesses ``(p, r)``: ``p`` above ``q``, ``r`` right of ``q``,
    nothing else of the tree inside the box they span."""
    out = {}
    for q in T.nodes:
        qx, qy = q
        above = [p for p in T.nodes if p[0] == qx and p[1] > qy]
        right = [r for r in T.nodes if r[1] == qy and r[0] > qx]
        if not above or not right:
            continue
        p = min(above, key=lambda t: t[1])
        r = min(right, key=lambda t: t[0])
        box = [
            t
            for t in T.nodes
            if qx <= t[0] <= r[0] and qy <= t[1] <= p[1] and t not in (p, q, r)
        ]
        if not box:
            out[q] = (p, r)
    return out


def nu_rotate(T: NuTree, q: Point) -> NuTree:
    asc = nu_ascents(T)
    if q not in asc:
        raise ValueError(f"{q} is not an ascent of the nu-tree")
    p, r = asc[q]
    return NuTree(T.path, (T.nodes - {q}) | {(r[0], p[1])})


def nu_order(trees: list[NuTree]) -> dict[NuTree, set[NuTree]]:
    """For each tree, the set of trees weakly above it (rotation reachability)."""
    up: dict[NuTree, set[NuTree]] = {}

    def visit(T: NuTree) -> set[NuTree]:
        if T not in up:
            acc = {T}
            for q in nu_ascents(T):
                acc |= visit(nu_rotate(T, q))
            up[T] = acc
        return up[T]

    for T in trees:
        visit(T)
    return up


def reverse_preorder_heights(T: SDecreasingTree) -> list[int]:
    """``h[i]`` = number of nodes (internal or leaf) preceded by exactly ``i`` internal
    nodes in a preorder walk that visits children from right to left."""
    h = [0] * (T.n + 1)
    count = 0

    def walk(x: int | None):
        nonlocal count
        h[count] += 1
        if x is None:
            return
        count += 1
        for y in reversed(T.children[x - 1]):
            walk(y)

    walk(T.root)
    return h


def right_flush(T: SDecreasingTree) -> NuTree:
    """Place ``h[i]`` points in row ``i``, bottom row first, each row filled from the right,
    skipping columns above a point that was not the leftmost of its row."""
    if not is_s_tamari(T):
        raise ValueError(f"{T} is not an s-Tamari tree")
    path = LatticePath.for_tamari(T.s)
    h = reverse_preorder_heights(T)
    blocked: set[int] = set()
    nodes = set()
    for y, count in enumerate(h):
        free = [x for x in range(path.row_ends[y], -1, -1) if x not in blocked]
        if len(free) < count:
            raise RuntimeError(f"row {y} has no room for {count} points")
        row = free[:count]
        nodes.update((x, y) for x in row)
        blocked.update(row[:-1])
    return NuTree(path, frozenset(nodes))


def is_covering(path: LatticePath, nodes) -> bool:
    nodes = set(nodes)
    return (
        path.root in nodes
        and {y for _, y in nodes} == set(range(path.height + 1))
        and {x for x, _ in nodes} == set(range(path.width + 1))
        and is_nu_compatible_set(path, nodes)
    )


def covering_faces(path: LatticePath, trees: list[NuTree] | None = None) -> list[frozenset[Point]]:
    """Every compatible set extends to a nu-tree, so subsets of nu-trees suffice."""
    trees = trees if trees is not None else enumerate_nu_trees(path)
    found = set()
    for T in trees:
        pts = sorted(T.nodes)
        for k in range(len(pts) + 1):
            for sub in combinations(pts, k):
                if frozenset(sub) not in found and is_covering(path, sub):
                    found.add(frozenset(sub))
    return sorted(found, key=lambda F: (-len(F), sorted(F)))


def face_dimension(path: LatticePath, F) -> int:
    return path.length + 1 - len(F)


def face_from_pair(T: NuTree, A) -> frozenset[Point]:
    A = set(A)
    if not A <= set(nu_ascents(T)):
        raise ValueError("face points must be ascents of the nu-tree")
    return T.nodes - A


def pair_from_face(F, trees: list[NuTree], order: dict[NuTree, set[NuTree]]) -> tuple[NuTree, frozenset[Point]]:
    """Minimal nu-tree containing ``F`` and the ascents removed from it; uniqueness is checked."""
    F = frozenset(F)
    holders = [T for T in trees if F <= T.nodes]
    minimal = [T for T in holders if all(R in order[T] for R in holders)]
    if len(minimal) != 1:
        raise RuntimeError(f"{len(minimal)} minimal nu-trees contain the face {sorted(F)}")
    T = minimal[0]
    A = T.nodes - F
    if not A <= set(nu_ascents(T)):
        raise RuntimeError("removed points are not ascents of the minimal nu-tree")
    return T, A


@dataclass
class IsomorphismReport:
    s: tuple[int, ...]
    path: str
    tamari_faces: list[int] = field(default_factory=list)
    nu_faces: list[int] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def matched(self) -> int:
        return sum(self.tamari_faces)

    def to_json(self) -> dict:
        return {
            "s": list(self.s),
            "path": self.path,
            "tamari_faces_by_dimension": self.tamari_faces,
            "nu_faces_by_dimension": self.nu_faces,
            "passed": self.passed,
            "violations": self.violations,
        }


def _by_dim(dims) -> list[int]:
    out: list[int] = []
    for d in dims:
        while len(out) <= d:
            out.append(0)
        out[d] += 1
    return out


def verify_isomorphism(s, max_trees: int | None = None) -> IsomorphismReport:
    s = as_composition(s)
    path = LatticePath.for_tamari(s)
    report = IsomorphismReport(s, path.steps)
    bad = report.violations

    tam = enumerate_tamari_trees(s, max_trees)
    nus = enumerate_nu_trees(path)
    order = nu_order(nus)
    image = {T: right_flush(T) for T in tam}

    if len(set(image.values())) != len(tam):
        bad.append("right flushing is not injective")
    if set(image.values()) != set(nus):
        bad.append("right flushing does not hit every nu-tree")
    if any(len(N.nodes) != path.length + 1 for N in nus):
        bad.append("nu-trees of different sizes")

    for T in tam:
        for R in tam:
            if leq(T, R) != (image[R] in order[image[T]]):
                bad.append(f"order not preserved between {T} and {R}")

    # Tamari rotations against nu rotations: the point that disappears is the ascent.
    ascent_point: dict[tuple[SDecreasingTree, tuple[int, int]], tuple[int, int]] = {}
    for T in tam:
        N = image[T]
        asc = nu_ascents(N)
        if len(asc) != len(tamari_ascents(T)):
            bad.append(f"ascent counts differ at {T}")
        for a in tamari_ascents(T):
            M = image[tamari_rotate(T, a)]
            gone = N.nodes - M.nodes
            if len(gone) != 1 or next(iter(gone)) not in asc or nu_rotate(N, next(iter(gone))) != M:
                bad.append(f"rotation at {tuple(a)} of {T} is not a nu rotation")
                continue
            ascent_point[(T, (a.a, a.c))] = next(iter(gone))

    faces = enumerate_tamari_faces(s, max_trees)
    report.tamari_faces = _by_dim(P.dimension for P in faces)
    cover = covering_faces(path, nus)
    report.nu_faces = _by_dim(face_dimension(path, F) for F in cover)

    face_of = {}
    for P in faces:
        try:
            F = image[P.lower].nodes - {ascent_point[(P.lower, a)] for a in P.ascents}
        except KeyError:
            bad.append(f"missing ascent correspondence for {P.to_json()}")
            continue
        face_of[P] = F
        if not is_covering(path, F):
            bad.append(f"image of {P.to_json()} is not a covering face")
        if face_dimension(path, F) != P.dimension:
            bad.append(f"dimension changes for {P.to_json()}")
        holders = {N for N in nus if F <= N.nodes}
        if holders != {image[X] for X in tamari_interval_members(P)}:
            bad.append(f"nu-trees containing the face differ from the interval {P.to_json()}")
        try:
            Tmin, A = pair_from_face(F, nus, order)
            if Tmin != image[P.lower] or len(A) != P.dimension:
                bad.append(f"face {sorted(F)} does not recover its pair")
        except RuntimeError as exc:
            bad.append(str(exc))
    if set(face_of.values()) != set(cover) or len(set(face_of.values())) != len(faces):
        bad.append("face map is not a bijection onto covering faces")

    items = list(face_of.items())
    for P, F in items:
        for Q, G in items:
            if P.contains(Q) != (G >= F):
                bad.append(f"containment not reversed for {P.to_json()} and {Q.to_json()}")
    return report

"""Pure intervals (faces of the s-permutahedron), variations and intersections."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .core import SDecreasingTree
from .enumeration import enumerate_trees
from .weak_order import NotAnAscent, _pair, add_ascents, join, leq, meet, tree_ascents


class NotComparable(ValueError):
    pass


class NotPure(ValueError):
    pass


@dataclass(frozen=True)
class PureInterval:
    """``[lower, lower + A]`` for a set ``A`` of tree-ascents ``(a, c)`` of ``lower``."""

    lower: SDecreasingTree
    ascents: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = frozenset(_pair(x) for x in self.ascents)
        object.__setattr__(self, "ascents", pairs)
        allowed = {_pair(x) for x in tree_ascents(self.lower)}
        if not pairs <= allowed:
            raise NotAnAscent(f"{sorted(pairs - allowed)} are not tree-ascents of {self.lower}")

    @cached_property
    def upper(self) -> SDecreasingTree:
        return add_ascents(self.lower, self.ascents)

    @property
    def dimension(self) -> int:
        return len(self.ascents)

    @property
    def s(self):
        return self.lower.s

    def contains_tree(self, T: SDecreasingTree) -> bool:
        return leq(self.lower, T) and leq(T, self.upper)

    def contains(self, other: "PureInterval") -> bool:
        return leq(self.lower, other.lower) and leq(other.upper, self.upper)

    def key(self):
        return (self.dimension, str(self.lower), sorted(self.ascents))

    def to_json(self) -> dict:
        return {"lower": self.lower.to_json(), "ascents": [list(p) for p in sorted(self.ascents)]}

    @classmethod
    def from_json(cls, data: dict) -> "PureInterval":
        return cls(SDecreasingTree.from_json(data["lower"]), frozenset(tuple(p) for p in data["ascents"]))


class Variation(NamedTuple):
    c: int
    a: int
    value: int
    amplitude: int
    essential: bool
    minimal: bool


def is_middle_descendant(T: SDecreasingTree, a: int, b: int) -> bool:
    """``a`` lies in a child of ``b`` other than the first and the last."""
    idx = T.child_index(a, b)
    return idx is not None and 0 < idx < T.s[b - 1]


def _require_leq(lower: SDecreasingTree, upper: SDecreasingTree) -> None:
    if not leq(lower, upper):
        raise NotComparable(f"{lower} is not below {upper}")


def variations(lower: SDecreasingTree, upper: SDecreasingTree) -> tuple[Variation, ...]:
    """Pairs whose cardinality grows across the interval, sorted by ``(c, a)``."""
    _require_leq(lower, upper)
    L, U = lower.inversions, upper.inversions
    varies = {(c, a) for (c, a), v in L.items() if U[c, a] > v}
    essential = {
        (c, a)
        for c, a in varies
        if not any((c, b) in varies and is_middle_descendant(lower, a, b) for b in range(a + 1, c))
    }
    out = []
    for c, a in sorted(varies):
        ess = (c, a) in essential
        minimal = ess and not any((b, a) in essential for b in range(a + 1, c))
        out.append(Variation(c, a, L[c, a], U[c, a] - L[c, a], ess, minimal))
    return tuple(out)


def minimal_essential_to_ascents(lower: SDecreasingTree, upper: SDecreasingTree) -> frozenset[tuple[int, int]]:
    return frozenset((x.a, x.c) for x in variations(lower, upper) if x.minimal)


def is_plus_one(lower: SDecreasingTree, upper: SDecreasingTree) -> bool:
    return all(x.amplitude == 1 for x in variations(lower, upper))


def is_pure_interval(lower: SDecreasingTree, upper: SDecreasingTree) -> bool:
    """Decide purity from variations alone, without searching for an ascent set."""
    var = variations(lower, upper)
    if any(x.amplitude != 1 for x in var):
        return False
    value = {(x.c, x.a): x.value for x in var}
    ess = {(x.c, x.a): x.value for x in var if x.essential}
    s = lower.s
    for (c, a), v in value.items():
        for b in range(a + 1, c):
            if (b, a) in value and value.get((c, b)) != v:
                return False
            if (
                s[b - 1] != 0
                and ess.get((c, a)) == v
                and ess.get((c, b)) == v
                and value.get((b, a)) != 0
            ):
                return False
    return True


def pure_interval_from_bounds(lower: SDecreasingTree, upper: SDecreasingTree) -> PureInterval:
    if not is_pure_interval(lower, upper):
        raise NotPure(f"[{lower}, {upper}] is not a pure interval")
    P = PureInterval(lower, minimal_essential_to_ascents(lower, upper))
    if P.upper != upper:
        raise NotPure(f"[{lower}, {upper}] passed the test but its ascents do not rebuild it")
    return P


def variation_path(lower: SDecreasingTree, upper: SDecreasingTree, c: int, a: int) -> tuple[int, ...]:
    """``(c, c_1, ..., c_k)``: essential partners of ``c`` at the same value that see ``a``."""
    var = {(x.c, x.a): x for x in variations(lower, upper)}
    if (c, a) not in var:
        raise ValueError(f"({c},{a}) does not vary")
    v = var[(c, a)].value
    L, s = lower.inversions, lower.s
    steps = [
        x
        for x in range(c - 1, a - 1, -1)
        if (c, x) in var
        and var[(c, x)].essential
        and var[(c, x)].value == v
        and (x == a or L[x, a] < s[x - 1])
    ]
    return (c, *steps)


def is_ascent_path(P: PureInterval, path: tuple[int, ...], a: int) -> bool:
    """Chain of selected ascents leading from ``c`` down to (a middle ancestor of) ``a``."""
    T, A, L = P.lower, P.ascents, P.lower.inversions
    c = path[0]
    if len(path) < 2:
        return False
    v = L[c, a]
    if (path[1], c) not in A or L[c, path[1]] != v:
        return False
    for prev, cur in zip(path[1:], path[2:]):
        if (cur, prev) not in A or L[prev, cur] != 0:
            return False
    last = path[-1]
    return last == a or is_middle_descendant(T, a, last)


def middle_variation_violations(P: PureInterval) -> list[tuple[int, tuple[int, int, int]]]:
    """Check eight implications about triples ``a < b < c``; returns ``(statement, (a, b, c))``."""
    T, s = P.lower, P.lower.s
    L = T.inversions
    var = {(x.c, x.a): x for x in variations(T, P.upper)}
    n = T.n

    def varies(c, a, v=None):
        x = var.get((c, a))
        return x is not None and (v is None or x.value == v)

    def essential(c, a, v=None):
        return varies(c, a, v) and var[(c, a)].essential

    bad = []
    for c in range(3, n + 1):
        for a in range(1, c - 1):
            for b in range(a + 1, c):
                t = (a, b, c)
                v = L[c, a]
                sb = s[b - 1]
                if varies(c, a) and L[c, b] == v and L[b, a] < sb and not varies(c, b, v):
                    bad.append((1, t))
                if varies(c, a) and is_middle_descendant(T, a, b) and not varies(c, b, v):
                    bad.append((2, t))
                if essential(c, a) and is_middle_descendant(T, a, b):
                    bad.append((3, t))
                if essential(c, a) and varies(b, a) and not (essential(b, a) and essential(c, b, v)):
                    bad.append((4, t))
                vb = L[c, b]
                if varies(c, b) and sb > 0 and L[b, a] == sb and L[c, a] == vb:
                    if not any(
                        is_middle_descendant(T, a, x) and varies(c, x) for x in range(b + 1, c)
                    ):
                        bad.append((5, t))
                if essential(c, a) and varies(c, b, v) and L[b, a] != 0:
                    bad.append((6, t))
                if varies(c, a) and L[c, b] == v and L[b, a] == 0 and sb > 0:
                    if not varies(b, a) and not any(
                        is_middle_descendant(T, b, x) and varies(c, x, v) for x in range(b + 1, c)
                    ):
                        bad.append((7, t))
                if varies(c, a) and essential(c, b, v) and sb > 0 and L[b, a] == 0 and not varies(b, a):
                    bad.append((8, t))
    return bad


def _var_values(P: PureInterval) -> set[tuple[int, int, int]]:
    return {(x.c, x.a, x.value) for x in variations(P.lower, P.upper)}


def compatible_variations(P1: PureInterval, P2: PureInterval) -> set[tuple[int, int, int]]:
    """Shared variations ``(c, a, v)`` that no middle ancestor in either lower tree obstructs."""
    T1, T2, s = P1.lower, P2.lower, P1.s
    L1, L2 = T1.inversions, T2.inversions
    out = set()
    for c, a, v in _var_values(P1) & _var_values(P2):
        if all(
            (not is_middle_descendant(T2, a, b) or L1[b, a] == s[b - 1])
            and (not is_middle_descendant(T1, a, b) or L2[b, a] == s[b - 1])
            for b in range(a + 1, c)
        ):
            out.add((c, a, v))
    return out


def intersect(P1: PureInterval, P2: PureInterval) -> PureInterval | None:
    """Intersection as a pure interval rooted at the join of the lower trees."""
    if P1.s != P2.s:
        raise ValueError(f"composition mismatch: {P1.s} != {P2.s}")
    X = join(P1.lower, P2.lower)
    if not (leq(X, P1.upper) and leq(X, P2.upper)):
        return None
    compat = compatible_variations(P1, P2)
    pairs = {(c, a) for c, a, _ in compat}
    A = {(a, c) for c, a in pairs if not any((b, a) in pairs for b in range(a + 1, c))}
    return PureInterval(X, frozenset(A))


def intersect_bounds(P1: PureInterval, P2: PureInterval) -> tuple[SDecreasingTree, SDecreasingTree] | None:
    """Lattice intersection ``[x1 v x2, y1 ^ y2]`` (reference route using the meet)."""
    X = join(P1.lower, P2.lower)
    Y = meet(P1.upper, P2.upper)
    return (X, Y) if leq(X, Y) else None


def faces_of_tree(T: SDecreasingTree) -> list[PureInterval]:
    asc = sorted(_pair(x) for x in tree_ascents(T))
    return [
        PureInterval(T, frozenset(A))
        for k in range(len(asc) + 1)
        for A in combinations(asc, k)
    ]


def enumerate_faces(s, max_trees: int | None = None) -> list[PureInterval]:
    faces = [P for T in enumerate_trees(s, max_trees) for P in faces_of_tree(T)]
    return sorted(faces, key=PureInterval.key)


def f_vector(faces: Iterable[PureInterval]) -> list[int]:
    out: list[int] = []
    for P in faces:
        while len(out) <= P.dimension:
            out.append(0)
        out[P.dimension] += 1
    return out


@dataclass
class ComplexReport:
    s: tuple[int, ...]
    faces: int
    pairs_checked: int = 0
    nonempty: int = 0
    subface_checks: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "s": list(self.s),
            "faces": self.faces,
            "pairs_checked": self.pairs_checked,
            "nonempty_intersections": self.nonempty,
            "subface_checks": self.subface_checks,
            "passed": self.passed,
            "violations": self.violations,
        }


class _PairChecker:
    """Caches joins, meets and variation sets shared by many face pairs."""

    def __init__(self, by_bounds: dict, report: ComplexReport):
        self.by_bounds = by_bounds
        self.report = report
        self._join: dict = {}
        self._meet: dict = {}
        self._vars: dict = {}

    def join(self, T, R):
        key = (T, R) if str(T) <= str(R) else (R, T)
        if key not in self._join:
            self._join[key] = join(*key)
        return self._join[key]

    def meet(self, T, R):
        key = (T, R) if str(T) <= str(R) else (R, T)
        if key not in self._meet:
            self._meet[key] = meet(*key)
        return self._meet[key]

    def var_values(self, P: PureInterval):
        if P not in self._vars:
            self._vars[P] = _var_values(P)
        return self._vars[P]

    def check(self, P: PureInterval, Q: PureInterval) -> None:
        report = self.report
        X = self.join(P.lower, Q.lower)
        formula_empty = not (leq(X, P.upper) and leq(X, Q.upper))
        Y = self.meet(P.upper, Q.upper)
        lattice_empty = not leq(X, Y)
        tag = f"{P.to_json()} & {Q.to_json()}"
        if formula_empty != lattice_empty:
            report.violations.append(f"emptiness disagrees for {tag}")
            return
        if formula_empty:
            return
        report.nonempty += 1
        got = intersect(P, Q)
        if (got.lower, got.upper) != (X, Y):
            report.violations.append(f"intersection formula disagrees with lattice bounds for {tag}")
            return
        if (got.lower, got.upper) not in self.by_bounds:
            report.violations.append(f"intersection is not a face for {tag}")
        if _var_values(got) != self.var_values(P) & self.var_values(Q):
            report.violations.append(f"variations of intersection are not the common ones for {tag}")
        ess = {(x.c, x.a, x.value) for x in variations(got.lower, got.upper) if x.essential}
        if ess != compatible_variations(P, Q):
            report.violations.append(f"essential variations differ from compatible ones for {tag}")


def verify_complex(
    s,
    max_trees: int | None = None,
    pairs: Iterable[tuple[int, int]] | None = None,
    closure: bool | None = None,
) -> ComplexReport:
    """Check pairwise intersections and subface closure of the face collection.

    ``pairs`` restricts the intersection grid to the given index pairs into the
    sorted face list; subface closure then runs only if ``closure`` is true.
    """
    faces = enumerate_faces(s, max_trees)
    trees = enumerate_trees(s, max_trees)
    report = ComplexReport(tuple(s), len(faces))
    by_bounds = {(P.lower, P.upper): P for P in faces}
    if len(by_bounds) != len(faces):
        report.violations.append("two faces share the same bounds")

    checker = _PairChecker(by_bounds, report)
    n = len(faces)
    grid = pairs if pairs is not None else ((i, j) for i in range(n) for j in range(i, n))
    for i, j in grid:
        report.pairs_checked += 1
        checker.check(faces[i], faces[j])

    if closure if closure is not None else pairs is None:
        for P in faces:
            inside = [T for T in trees if P.contains_tree(T)]
            for X in inside:
                for Y in inside:
                    if not leq(X, Y):
                        continue
                    report.subface_checks += 1
                    if is_pure_interval(X, Y) != ((X, Y) in by_bounds):
                        report.violations.append(f"subface closure fails on [{X}, {Y}] inside {P.to_json()}")
    return report


def _stripe(args) -> ComplexReport:
    s, max_trees, k, threads, n = args
    grid = [(i, j) for i in range(k, n, threads) for j in range(i, n)]
    return verify_complex(s, max_trees, pairs=grid, closure=False)


def verify_complex_parallel(s, max_trees: int | None = None, threads: int = 1) -> ComplexReport:
    """Same checks as :func:`verify_complex`, with the pair grid split across processes."""
    if threads <= 1:
        return verify_complex(s, max_trees)
    from concurrent.futures import ProcessPoolExecutor

    s = tuple(s)
    n = len(enumerate_faces(s, max_trees))
    report = verify_complex(s, max_trees, pairs=(), closure=True)
    with ProcessPoolExecutor(threads) as pool:
        for part in pool.map(_stripe, [(s, max_trees, k, threads, n) for k in range(threads)]):
            report.pairs_checked += part.pairs_checked
            report.nonempty += part.nonempty
            report.violations.extend(part.violations)
    return report

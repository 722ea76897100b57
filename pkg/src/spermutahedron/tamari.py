"""s-Tamari trees, Tamari rotations and the s-associahedron face complex."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

from .core import SDecreasingTree, as_composition
from .enumeration import IntPolynomial, SizeBoundExceeded, max_trees_bound
from .weak_order import HasseDiagram, NotAnAscent, _bump, _pair, build_hasse, leq


class TamariAscent(NamedTuple):
    a: int
    c: int


class NotTamari(ValueError):
    pass


def is_s_tamari(T: SDecreasingTree) -> bool:
    """``card(c, a) <= card(c, b)`` for every ``a < b < c``."""
    rows = T.inversions.rows
    for row in rows:
        for a in range(len(row)):
            for b in range(a + 1, len(row)):
                if row[a] > row[b]:
                    return False
    return True


def is_s_tamari_by_labels(T: SDecreasingTree) -> bool:
    """Every label in an earlier child of a node is smaller than every label in a later one."""

    def labels(x: int | None) -> list[int]:
        if x is None:
            return []
        out = [x]
        for y in T.children[x - 1]:
            out.extend(labels(y))
        return out

    for slots in T.children:
        seen_max = 0
        for y in slots:
            sub = labels(y)
            if sub and min(sub) < seen_max:
                return False
            if sub:
                seen_max = max(seen_max, max(sub))
    return True


def tamari_ascents(T: SDecreasingTree) -> frozenset[TamariAscent]:
    """Nodes sitting directly in a non-last slot of their parent."""
    out = set()
    for c, slots in enumerate(T.children, start=1):
        for i, a in enumerate(slots[:-1]):
            if a is not None:
                out.add(TamariAscent(a, c))
    return frozenset(out)


def _require_tamari(T: SDecreasingTree) -> None:
    if not is_s_tamari(T):
        raise NotTamari(f"{T} is not an s-Tamari tree")


def tamari_rotate(T: SDecreasingTree, asc) -> SDecreasingTree:
    _require_tamari(T)
    a, c = _pair(asc)
    if (a, c) not in tamari_ascents(T):
        raise NotAnAscent(f"({a},{c}) is not a Tamari-ascent of {T}")
    return _bump(T, [(a, c)])


def tamari_add_ascents(T: SDecreasingTree, A: Iterable) -> SDecreasingTree:
    _require_tamari(T)
    pairs = {_pair(x) for x in A}
    extra = pairs - set(tamari_ascents(T))
    if extra:
        raise NotAnAscent(f"{sorted(extra)} are not Tamari-ascents of {T}")
    return _bump(T, sorted(pairs))


@dataclass(frozen=True)
class PureTamariInterval:
    lower: SDecreasingTree
    ascents: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = frozenset(_pair(x) for x in self.ascents)
        object.__setattr__(self, "ascents", pairs)
        _require_tamari(self.lower)
        extra = pairs - set(tamari_ascents(self.lower))
        if extra:
            raise NotAnAscent(f"{sorted(extra)} are not Tamari-ascents of {self.lower}")

    @cached_property
    def upper(self) -> SDecreasingTree:
        return tamari_add_ascents(self.lower, self.ascents)

    @property
    def dimension(self) -> int:
        return len(self.ascents)

    @property
    def s(self):
        return self.lower.s

    def contains_tree(self, T: SDecreasingTree) -> bool:
        return leq(self.lower, T) and leq(T, self.upper)

    def contains(self, other: "PureTamariInterval") -> bool:
        return leq(self.lower, other.lower) and leq(other.upper, self.upper)

    def key(self):
        return (self.dimension, str(self.lower), sorted(self.ascents))

    def to_json(self) -> dict:
        return {"lower": self.lower.to_json(), "ascents": [list(p) for p in sorted(self.ascents)]}


def iter_tamari_trees(s) -> Iterator[SDecreasingTree]:
    """Generate s-Tamari trees directly.

    Below a node ``m`` the smaller labels ``lo..m-1`` split into consecutive
    (possibly empty) blocks, one per slot, each block rooted at its maximum.
    """
    s = as_composition(s)

    def blocks(lo: int, hi: int, parts: int) -> Iterator[list[tuple[int, int]]]:
        if parts == 1:
            yield [(lo, hi)]
            return
        for cut in range(lo, hi + 1):
            for rest in blocks(cut, hi, parts - 1):
                yield [(lo, cut)] + rest

    def subtrees(lo: int, hi: int) -> Iterator[dict[int, tuple[int | None, ...]]]:
        # labels lo..hi-1, rooted at hi-1
        if lo == hi:
            yield {}
            return
        m = hi - 1
        for split in blocks(lo, m, s[m - 1] + 1):
            yield from _combine(m, split)

    def _combine(m: int, split: list[tuple[int, int]]):
        def rec(i: int, acc: dict, roots: list):
            if i == len(split):
                out = dict(acc)
                out[m] = tuple(roots)
                yield out
                return
            lo, hi = split[i]
            for sub in subtrees(lo, hi):
                yield from rec(i + 1, {**acc, **sub}, roots + [hi - 1 if hi > lo else None])

        yield from rec(0, {}, [])

    n = len(s)
    for slots in subtrees(1, n + 1):
        yield SDecreasingTree(s, tuple(slots[i] for i in range(1, n + 1)))


def enumerate_tamari_trees(s, max_trees: int | None = None) -> list[SDecreasingTree]:
    """All s-Tamari trees sorted by bracket serialisation."""
    bound = max_trees_bound(max_trees)
    out = []
    for T in iter_tamari_trees(s):
        out.append(T)
        if len(out) > bound:
            raise SizeBoundExceeded(f"more than {bound} s-Tamari trees for s={tuple(s)}")
    return sorted(out, key=str)


def tamari_interval_members(P: "PureTamariInterval") -> list[SDecreasingTree]:
    """s-Tamari trees of ``[lower, upper]``, reached by Tamari rotations from ``lower``."""
    seen = {P.lower}
    todo = [P.lower]
    while todo:
        T = todo.pop()
        for asc in tamari_ascents(T):
            R = tamari_rotate(T, asc)
            if R not in seen and leq(R, P.upper):
                seen.add(R)
                todo.append(R)
    return sorted(seen, key=str)


def narayana_numbers(s, max_trees: int | None = None) -> list[int]:
    """``out[k]`` = number of s-Tamari trees with ``k`` Tamari-ascents."""
    out = [0] * len(s)
    for T in enumerate_tamari_trees(s, max_trees):
        out[len(tamari_ascents(T))] += 1
    return out


def s_narayana(s, k: int, max_trees: int | None = None) -> int:
    nums = narayana_numbers(s, max_trees)
    return nums[k] if 0 <= k < len(nums) else 0


def s_catalan(s, max_trees: int | None = None) -> int:
    return len(enumerate_tamari_trees(s, max_trees))


def f_polynomial_tamari(s, max_trees: int | None = None) -> IntPolynomial:
    return IntPolynomial(tuple(narayana_numbers(s, max_trees))).substitute_one_plus_t()


def tamari_faces_of_tree(T: SDecreasingTree) -> list[PureTamariInterval]:
    asc = sorted(tamari_ascents(T))
    return [
        PureTamariInterval(T, frozenset(A))
        for k in range(len(asc) + 1)
        for A in combinations(asc, k)
    ]


def enumerate_tamari_faces(s, max_trees: int | None = None) -> list[PureTamariInterval]:
    faces = [P for T in enumerate_tamari_trees(s, max_trees) for P in tamari_faces_of_tree(T)]
    return sorted(faces, key=PureTamariInterval.key)


def tamari_hasse(s, max_trees: int | None = None) -> HasseDiagram:
    return build_hasse(enumerate_tamari_trees(s, max_trees), tamari_ascents, tamari_rotate)

"""The s-weak order on s-decreasing trees.

Trees are compared by inclusion of their inversion multisets.  Joins close
the pointwise maximum under transitivity; meets use the order-reversing
involution ``I -> maxs - I``, which swaps transitivity and planarity, to turn
a join of complements into a meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .core import (
    InversionMultiset,
    SDecreasingTree,
    complement,
    inversions_to_tree,
    transitive_closure,
    union,
)
from .enumeration import enumerate_trees


class TreeAscent(NamedTuple):
    a: int
    c: int
    value: int


class NotAnAscent(ValueError):
    pass


def _same_s(T: SDecreasingTree, R: SDecreasingTree) -> None:
    if T.s != R.s:
        raise ValueError(f"composition mismatch: {T.s} != {R.s}")


def leq(T: SDecreasingTree, R: SDecreasingTree) -> bool:
    _same_s(T, R)
    return all(x <= y for r, q in zip(T.inversions.rows, R.inversions.rows) for x, y in zip(r, q))


def join(T: SDecreasingTree, R: SDecreasingTree) -> SDecreasingTree:
    _same_s(T, R)
    return inversions_to_tree(transitive_closure(union(T.inversions, R.inversions)), T.s)


def meet(T: SDecreasingTree, R: SDecreasingTree) -> SDecreasingTree:
    _same_s(T, R)
    s = T.s
    joined = transitive_closure(union(complement(T.inversions, s), complement(R.inversions, s)))
    return inversions_to_tree(complement(joined, s), s)


def join_all(trees: Iterable[SDecreasingTree]) -> SDecreasingTree:
    it = iter(trees)
    out = next(it)
    for T in it:
        out = join(out, T)
    return out


def _pair(x) -> tuple[int, int]:
    return (x[0], x[1])


def ascent_partner(T: SDecreasingTree, a: int) -> int | None:
    """Nearest ancestor of ``a`` that does not hold ``a`` in its last slot."""
    for p, slot in T.ancestors(a):
        if slot < T.s[p - 1]:
            return p
    return None


def tree_ascents(T: SDecreasingTree) -> frozenset[TreeAscent]:
    """Tree-ascents read off the tree shape.

    ``(a, c)`` qualifies when ``a`` lies below ``c`` outside its last child,
    every node strictly between them on the ancestor chain holds ``a`` in its
    last child, and the last child of ``a`` is empty whenever ``a`` has more
    than one slot.
    """
    out = set()
    s = T.s
    for a in range(1, T.n):
        if s[a - 1] > 0 and T.children[a - 1][-1] is not None:
            continue
        for p, slot in T.ancestors(a):
            if slot < s[p - 1]:
                out.add(TreeAscent(a, p, slot))
                break
    return frozenset(out)


def tree_ascents_by_inversions(T: SDecreasingTree) -> frozenset[TreeAscent]:
    """Tree-ascents characterised purely by cardinalities (independent route)."""
    I = T.inversions
    s = T.s
    n = T.n
    out = set()
    for c in range(2, n + 1):
        for a in range(1, c):
            v = I[c, a]
            if v >= s[c - 1]:
                continue
            if any(I[d, c] != I[d, a] for d in range(c + 1, n + 1)):
                continue
            if any(I[c, b] == v and I[b, a] != s[b - 1] for b in range(a + 1, c)):
                continue
            if s[a - 1] > 0 and any(
                I[a, x] == s[a - 1] and I[c, x] <= v for x in range(1, a)
            ):
                continue
            out.add(TreeAscent(a, c, v))
    return frozenset(out)


def tree_ascents_literal(T: SDecreasingTree) -> frozenset[TreeAscent]:
    """Check all four tree conditions on every pair (slow reference)."""
    s = T.s
    out = set()
    for c in range(2, T.n + 1):
        for a in range(1, c):
            idx = T.child_index(a, c)
            if idx is None or idx == s[c - 1]:
                continue
            if any(
                T.is_descendant(a, b) and T.child_index(a, b) != s[b - 1]
                for b in range(a + 1, c)
            ):
                continue
            if s[a - 1] > 0 and T.children[a - 1][-1] is not None:
                continue
            out.add(TreeAscent(a, c, idx))
    return frozenset(out)


def _bump(T: SDecreasingTree, pairs: Iterable[tuple[int, int]]) -> SDecreasingTree:
    I = T.inversions
    rows = I.mutable()
    for a, c in pairs:
        rows[c - 1][a - 1] += 1
    return inversions_to_tree(transitive_closure(InversionMultiset.from_lists(rows)), T.s)


def rotate(T: SDecreasingTree, asc) -> SDecreasingTree:
    a, c = _pair(asc)
    if (a, c) not in {_pair(x) for x in tree_ascents(T)}:
        raise NotAnAscent(f"({a},{c}) is not a tree-ascent of {T}")
    return _bump(T, [(a, c)])


def add_ascents(T: SDecreasingTree, A: Iterable) -> SDecreasingTree:
    pairs = {_pair(x) for x in A}
    allowed = {_pair(x) for x in tree_ascents(T)}
    extra = pairs - allowed
    if extra:
        raise NotAnAscent(f"{sorted(extra)} are not tree-ascents of {T}")
    return _bump(T, sorted(pairs))


@dataclass(frozen=True)
class HasseDiagram:
    """Vertices in canonical order; edges ``(source, target, a, c)`` by index."""

    vertices: tuple[SDecreasingTree, ...]
    edges: tuple[tuple[int, int, int, int], ...]

    def to_json(self) -> dict:
        return {
            "s": list(self.vertices[0].s) if self.vertices else [],
            "vertices": [str(T) for T in self.vertices],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph hasse {"]
        for i, T in enumerate(self.vertices):
            lines.append(f'  {i} [label="{T}"];')
        for i, j, a, c in self.edges:
            lines.append(f'  {i} -> {j} [label="({a},{c})"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_hasse(trees, ascents, step) -> HasseDiagram:
    trees = tuple(trees)
    index = {T: i for i, T in enumerate(trees)}
    edges = []
    for i, T in enumerate(trees):
        for a, c in sorted(_pair(x) for x in ascents(T)):
            edges.append((i, index[step(T, (a, c))], a, c))
    return HasseDiagram(trees, tuple(edges))


def hasse_diagram(s, max_trees: int | None = None) -> HasseDiagram:
    return build_hasse(enumerate_trees(s, max_trees), tree_ascents, rotate)

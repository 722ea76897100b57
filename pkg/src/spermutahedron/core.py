"""Weak compositions, inversion multisets and s-decreasing trees.

An s-decreasing tree on a weak composition ``s = (s(1), ..., s(n))`` has
internal nodes labelled ``1..n``; node ``i`` owns ``s(i) + 1`` ordered child
slots and labels decrease from the root ``n`` towards the leaves.  The tree is
encoded faithfully by its inversion multiset: for ``a < c`` the cardinality
``card(c, a)`` records on which side of (or in which child of) ``c`` the node
``a`` sits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Composition = tuple[int, ...]

MAX_ENTRY = 2**31 - 1


class CompositionError(ValueError):
    """Raised for malformed weak compositions."""


class InvalidInversions(ValueError):
    """An inversion multiset that is not the inversion set of any tree.

    ``triple`` is the offending ``(a, b, c)`` (or ``(a, c)`` for a bound
    violation) and ``condition`` names the failed rule.
    """

    def __init__(self, condition: str, triple: tuple[int, ...]):
        self.condition = condition
        self.triple = triple
        super().__init__(f"{condition} violated at {triple}")


def as_composition(entries: Iterable[int]) -> Composition:
    s = tuple(entries)
    if not s:
        raise CompositionError("a weak composition needs at least one entry")
    for x in s:
        if isinstance(x, bool) or not isinstance(x, int):
            raise CompositionError(f"entry {x!r} is not an integer")
        if x < 0 or x > MAX_ENTRY:
            raise CompositionError(f"entry {x} out of range")
    return s


def parse_composition(text: str) -> Composition:
    """Parse ``"0,2,2"`` into ``(0, 2, 2)``."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not re.fullmatch(r"\d+", p) for p in parts):
        raise CompositionError(f"not a comma-separated list of non-negative integers: {text!r}")
    return as_composition(int(p) for p in parts)


@dataclass(frozen=True)
class InversionMultiset:
    """Dense triangular table of cardinalities.

    ``rows[c - 1][a - 1]`` holds ``card(c, a)`` for ``1 <= a < c <= n``.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for c, row in enumerate(self.rows, start=1):
            if len(row) != c - 1:
                raise ValueError(f"row {c} must have {c - 1} entries")
            if any(v < 0 for v in row):
                raise ValueError("cardinalities must be non-negative")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, key: tuple[int, int]) -> int:
        c, a = key
        return self.rows[c - 1][a - 1]

    @classmethod
    def zeros(cls, n: int) -> "InversionMultiset":
        return cls(tuple((0,) * (c - 1) for c in range(1, n + 1)))

    @classmethod
    def from_mapping(cls, n: int, card: dict[tuple[int, int], int]) -> "InversionMultiset":
        """Build from a sparse ``{(c, a): value}`` mapping; missing pairs are zero."""
        rows = [[0] * (c - 1) for c in range(1, n + 1)]
        for (c, a), v in card.items():
            if not 1 <= a < c <= n:
                raise ValueError(f"pair {(c, a)} out of range for n={n}")
            rows[c - 1][a - 1] = v
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "InversionMultiset":
        return cls(tuple(tuple(r) for r in rows))

    def pairs(self) -> Iterator[tuple[int, int]]:
        for c in range(2, self.n + 1):
            for a in range(1, c):
                yield c, a

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        for c, a in self.pairs():
            yield (c, a), self.rows[c - 1][a - 1]

    def mutable(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def replace(self, updates: dict[tuple[int, int], int]) -> "InversionMultiset":
        rows = self.mutable()
        for (c, a), v in updates.items():
            rows[c - 1][a - 1] = v
        return InversionMultiset.from_lists(rows)

    def fits(self, s: Composition) -> bool:
        """True when the multiset lies inside the maximal multiset of ``s``."""
        return len(s) == self.n and all(v <= s[c - 1] for (c, _), v in self.items())

    def to_json(self, s: Composition) -> dict:
        return {"s": list(s), "card": [[c, a, v] for (c, a), v in self.items() if v]}

    @classmethod
    def from_json(cls, data: dict) -> tuple["InversionMultiset", Composition]:
        s = as_composition(data["s"])
        card = {(int(c), int(a)): int(v) for c, a, v in data["card"]}
        return cls.from_mapping(len(s), card), s


def maximal_multiset(s: Composition) -> InversionMultiset:
    return InversionMultiset(tuple((s[c - 1],) * (c - 1) for c in range(1, len(s) + 1)))


def _check_length(I: InversionMultiset, J: InversionMultiset) -> None:
    if I.n != J.n:
        raise ValueError(f"length mismatch: {I.n} != {J.n}")


def union(I: InversionMultiset, J: InversionMultiset) -> InversionMultiset:
    """Pointwise maximum."""
    _check_length(I, J)
    return InversionMultiset(
        tuple(tuple(max(x, y) for x, y in zip(r, q)) for r, q in zip(I.rows, J.rows))
    )


def complement(I: InversionMultiset, s: Composition) -> InversionMultiset:
    """``maxs - I``; exchanges transitivity and planarity."""
    if not I.fits(s):
        raise ValueError("multiset does not fit inside the composition")
    return InversionMultiset(
        tuple(tuple(s[c] - v for v in row) for c, row in enumerate(I.rows))
    )


def transitivity_violation(I: InversionMultiset) -> tuple[int, int, int] | None:
    rows = I.rows
    n = I.n
    for c in range(3, n + 1):
        rc = rows[c - 1]
        for b in range(2, c):
            rb = rows[b - 1]
            cb = rc[b - 1]
            for a in range(1, b):
                if rb[a - 1] > 0 and rc[a - 1] < cb:
                    return (a, b, c)
    return None


def planarity_violation(I: InversionMultiset, s: Composition) -> tuple[int, int, int] | None:
    # card(b,a) < s(b) forces a to sit weakly left of b as seen from any c > b,
    # hence card(c,a) <= card(c,b).
    if len(s) != I.n:
        raise ValueError(f"length mismatch: {I.n} != {len(s)}")
    rows = I.rows
    for c in range(3, I.n + 1):
        rc = rows[c - 1]
        for b in range(2, c):
            rb = rows[b - 1]
            cb = rc[b - 1]
            sb = s[b - 1]
            for a in range(1, b):
                if rb[a - 1] != sb and rc[a - 1] > cb:
                    return (a, b, c)
    return None


def is_transitive(I: InversionMultiset) -> bool:
    return transitivity_violation(I) is None


def is_planar(I: InversionMultiset, s: Composition) -> bool:
    return planarity_violation(I, s) is None


def transitive_closure(I: InversionMultiset) -> InversionMultiset:
    """Close ``I`` under transitivity paths.

    ``card(c, a)`` becomes the largest ``card(c, b)`` over the first steps
    ``c > b`` of paths ``c > b > ... > a`` whose steps all have positive
    cardinality.  Computed from the reachability relation of the
    positive-cardinality graph rather than by relaxation.
    """
    n = I.n
    rows = I.rows
    # reach[b] = set of a < b reachable from b along positive steps
    reach: list[int] = [0] * (n + 1)  # bitmasks
    for b in range(2, n + 1):
        mask = 0
        rb = rows[b - 1]
        for a in range(b - 1, 0, -1):
            if rb[a - 1] > 0 and not (mask >> a) & 1:
                mask |= (1 << a) | reach[a]
        reach[b] = mask
    out = []
    for c in range(1, n + 1):
        rc = rows[c - 1]
        new = list(rc)
        for b in range(2, c):
            v = rc[b - 1]
            if v == 0:
                continue
            m = reach[b]
            for a in range(1, b):
                if (m >> a) & 1 and new[a - 1] < v:
                    new[a - 1] = v
        out.append(tuple(new))
    return InversionMultiset(tuple(out))


_TOKEN = re.compile(r"\s*(\d+|\[|\]|,|\.)")


@dataclass(frozen=True)
class SDecreasingTree:
    """Planar rooted tree; ``children[i - 1]`` lists the child slots of node ``i``.

    A slot holds a node label or ``None`` for an empty leaf.
    """

    s: Composition
    children: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        n = len(self.s)
        if len(self.children) != n:
            raise ValueError("one slot tuple per node is required")
        seen = set()
        for i, slots in enumerate(self.children, start=1):
            if len(slots) != self.s[i - 1] + 1:
                raise ValueError(f"node {i} needs {self.s[i - 1] + 1} child slots")
            for x in slots:
                if x is None:
                    continue
                if not 1 <= x < i:
                    raise ValueError(f"child {x} of node {i} breaks the decreasing labelling")
                if x in seen:
                    raise ValueError(f"node {x} appears twice")
                seen.add(x)
        if seen != set(range(1, n)):
            raise ValueError("every node except the root must have a parent")

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def root(self) -> int:
        return len(self.s)

    @cached_property
    def parent(self) -> tuple[tuple[int, int] | None, ...]:
        """``parent[a - 1] = (p, slot)``; ``None`` for the root."""
        out: list[tuple[int, int] | None] = [None] * self.n
        for p, slots in enumerate(self.children, start=1):
            for i, x in enumerate(slots):
                if x is not None:
                    out[x - 1] = (p, i)
        return tuple(out)

    @cached_property
    def addresses(self) -> tuple[tuple[int, ...], ...]:
        """Sequence of slot indices from the root down to each node."""
        out: list[tuple[int, ...]] = [()] * self.n
        stack = [self.root]
        while stack:
            x = stack.pop()
            for i, y in enumerate(self.children[x - 1]):
                if y is not None:
                    out[y - 1] = out[x - 1] + (i,)
                    stack.append(y)
        return tuple(out)

    def ancestors(self, a: int) -> Iterator[tuple[int, int]]:
        """Yield ``(ancestor, slot containing a)`` walking up from ``a``."""
        link = self.parent[a - 1]
        while link is not None:
            yield link
            link = self.parent[link[0] - 1]

    def is_descendant(self, a: int, c: int) -> bool:
        pa, pc = self.addresses[a - 1], self.addresses[c - 1]
        return len(pa) > len(pc) and pa[: len(pc)] == pc and a != c

    def child_index(self, a: int, c: int) -> int | None:
        """Index of the child of ``c`` whose subtree contains ``a``."""
        if not self.is_descendant(a, c):
            return None
        return self.addresses[a - 1][len(self.addresses[c - 1])]

    def __str__(self) -> str:
        def fmt(x: int | None) -> str:
            if x is None:
                return "."
            return f"{x}[" + ",".join(fmt(y) for y in self.children[x - 1]) + "]"

        return fmt(self.root)

    @classmethod
    def parse(cls, text: str) -> "SDecreasingTree":
        """Parse the bracket form, e.g. ``"3[.,2[1[.],.,.],.]"``; arities give ``s``."""
        tokens = _TOKEN.findall(text)
        if "".join(tokens) != re.sub(r"\s+", "", text):
            raise ValueError(f"unexpected characters in {text!r}")
        pos = 0
        slots: dict[int, tuple[int | None, ...]] = {}

        def node() -> int | None:
            nonlocal pos
            tok = tokens[pos]
            pos += 1
            if tok == ".":
                return None
            if not tok.isdigit():
                raise ValueError(f"unexpected token {tok!r}")
            label = int(tok)
            if tokens[pos] != "[":
                raise ValueError(f"node {label} lacks its child list")
            pos += 1
            kids = [node()]
            while tokens[pos] == ",":
                pos += 1
                kids.append(node())
            if tokens[pos] != "]":
                raise ValueError("unbalanced brackets")
            pos += 1
            if label in slots:
                raise ValueError(f"node {label} appears twice")
            slots[label] = tuple(kids)
            return label

        try:
            root = node()
        except IndexError:
            raise ValueError(f"truncated tree {text!r}") from None
        if pos != len(tokens) or root is None:
            raise ValueError(f"malformed tree {text!r}")
        n = len(slots)
        if set(slots) != set(range(1, n + 1)) or root != n:
            raise ValueError("labels must be 1..n with root n")
        s = tuple(len(slots[i]) - 1 for i in range(1, n + 1))
        return cls(s, tuple(slots[i] for i in range(1, n + 1)))

    def to_nested(self) -> list:
        """Nested list ``[label, child_0, ..., child_m]`` with ``None`` leaves."""

        def nest(x: int | None):
            if x is None:
                return None
            return [x] + [nest(y) for y in self.children[x - 1]]

        return nest(self.root)

    @classmethod
    def from_nested(cls, data: list, s: Sequence[int] | None = None) -> "SDecreasingTree":
        slots: dict[int, tuple[int | None, ...]] = {}

        def walk(node) -> int | None:
            if node is None:
                return None
            label = int(node[0])
            slots[label] = tuple(walk(k) for k in node[1:])
            return label

        walk(data)
        n = len(slots)
        if set(slots) != set(range(1, n + 1)):
            raise ValueError("labels must be 1..n")
        inferred = tuple(len(slots[i]) - 1 for i in range(1, n + 1))
        if s is not None and tuple(s) != inferred:
            raise ValueError(f"tree arities {inferred} disagree with s={tuple(s)}")
        return cls(inferred, tuple(slots[i] for i in range(1, n + 1)))

    def to_json(self) -> dict:
        return {"s": list(self.s), "tree": self.to_nested()}

    @classmethod
    def from_json(cls, data: dict) -> "SDecreasingTree":
        return cls.from_nested(data["tree"], data.get("s"))

    @cached_property
    def inversions(self) -> InversionMultiset:
        return tree_to_inversions(self)


def tree_to_inversions(T: SDecreasingTree) -> InversionMultiset:
    addr = T.addresses
    rows = []
    for c in range(1, T.n + 1):
        pc = addr[c - 1]
        k = len(pc)
        sc = T.s[c - 1]
        row = []
        for a in range(1, c):
            pa = addr[a - 1]
            if len(pa) > k and pa[:k] == pc:
                row.append(pa[k])
                continue
            # first slot index where the two root paths part ways
            j = 0
            while pa[j] == pc[j]:
                j += 1
            row.append(0 if pa[j] < pc[j] else sc)
        rows.append(tuple(row))
    return InversionMultiset(tuple(rows))


def inversions_to_tree(I: InversionMultiset, s: Composition) -> SDecreasingTree:
    """Rebuild the unique tree with inversion multiset ``I``.

    The root is ``n``; the remaining labels split by ``card(n, a)`` into the
    child subtrees of ``n``, and each group repeats the process with its
    largest label as root.
    """
    s = as_composition(s)
    if len(s) != I.n:
        raise ValueError(f"length mismatch: {I.n} != {len(s)}")
    for (c, a), v in I.items():
        if v > s[c - 1]:
            raise InvalidInversions("bound card(c,a) <= s(c)", (a, c))
    bad = transitivity_violation(I)
    if bad is not None:
        raise InvalidInversions("transitivity", bad)
    bad = planarity_violation(I, s)
    if bad is not None:
        raise InvalidInversions("planarity", bad)

    slots: list[tuple[int | None, ...]] = [()] * len(s)

    def build(group: list[int]) -> int | None:
        if not group:
            return None
        top = group[-1]
        parts: list[list[int]] = [[] for _ in range(s[top - 1] + 1)]
        for a in group[:-1]:
            parts[I[top, a]].append(a)
        slots[top - 1] = tuple(build(p) for p in parts)
        return top

    build(list(range(1, len(s) + 1)))
    T = SDecreasingTree(s, tuple(slots))
    if T.inversions != I:
        # Cannot happen for planar transitive input; kept as a hard guard.
        raise InvalidInversions("reconstruction", (0, 0, 0))
    return T


def minimal_tree(s: Composition) -> SDecreasingTree:
    """The tree whose inversions are all zero: every node in its parent's first slot."""
    s = as_composition(s)
    slots = []
    for i, m in enumerate(s, start=1):
        slots.append(((i - 1) if i > 1 else None,) + (None,) * m)
    return SDecreasingTree(s, tuple(slots))


def maximal_tree(s: Composition) -> SDecreasingTree:
    return inversions_to_tree(maximal_multiset(s), s)

"""Brute-force reference implementations used only by the tests.

Every routine here works from definitions by exhaustive search, sharing no
logic with the package beyond the data types.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from itertools import combinations, product
from math import comb

from spermutahedron.core import InversionMultiset, SDecreasingTree


def sweep() -> list[tuple[int, ...]]:
    doc = json.loads(resources.files("spermutahedron.data").joinpath("sweep.json").read_text())
    return [tuple(c) for c in doc["compositions"]]


def manifest() -> dict:
    return json.loads(resources.files("spermutahedron.data").joinpath("sweep.json").read_text())


def pairs(n: int):
    return [(c, a) for c in range(2, n + 1) for a in range(1, c)]


def all_multisets(s) -> list[InversionMultiset]:
    """Every multiset with ``0 <= card(c, a) <= s(c)``."""
    n = len(s)
    keys = pairs(n)
    out = []
    for values in product(*(range(s[c - 1] + 1) for c, a in keys)):
        out.append(InversionMultiset.from_mapping(n, dict(zip(keys, values))))
    return out


def transitive_by_definition(I: InversionMultiset) -> bool:
    n = I.n
    for a, b, c in combinations(range(1, n + 1), 3):
        if I[b, a] != 0 and not I[c, a] >= I[c, b]:
            return False
    return True


def planar_by_definition(I: InversionMultiset, s) -> bool:
    n = I.n
    for a, b, c in combinations(range(1, n + 1), 3):
        if I[b, a] != s[b - 1] and not I[c, a] <= I[c, b]:
            return False
    return True


def closure_fixed_point(I: InversionMultiset) -> InversionMultiset:
    """Raise ``card(c, a)`` to ``card(c, b)`` whenever ``card(b, a) > 0``, until stable."""
    n = I.n
    card = {k: I[k] for k in pairs(n)}
    changed = True
    while changed:
        changed = False
        for a, b, c in combinations(range(1, n + 1), 3):
            if card[b, a] > 0 and card[c, a] < card[c, b]:
                card[c, a] = card[c, b]
                changed = True
    return InversionMultiset.from_mapping(n, card)


def contained(I: InversionMultiset, J: InversionMultiset) -> bool:
    return all(I[k] <= J[k] for k in pairs(I.n))


def trees_by_filter(s) -> list[InversionMultiset]:
    """Inversion multisets of all trees, as the transitive and planar members of the box."""
    return [I for I in all_multisets(s) if transitive_by_definition(I) and planar_by_definition(I, s)]


def trees_by_insertion(s) -> list[SDecreasingTree]:
    """Grow trees by hanging node ``k`` on any empty leaf of the tree on ``k+1..n``."""
    n = len(s)

    def grow(k, slots):
        if k == 0:
            yield SDecreasingTree(tuple(s), tuple(tuple(x) for x in slots))
            return
        for parent in range(k + 1, n + 1):
            for j, y in enumerate(slots[parent - 1]):
                if y is None:
                    new = [list(x) for x in slots]
                    new[parent - 1][j] = k
                    new[k - 1] = [None] * (s[k - 1] + 1)
                    yield from grow(k - 1, new)

    top = [[None] * (s[i] + 1) if i == n - 1 else [] for i in range(n)]
    yield from grow(n - 1, top)


def brute_join(T, R, trees):
    ups = [U for U in trees if contained(T.inversions, U.inversions) and contained(R.inversions, U.inversions)]
    least = [U for U in ups if all(contained(U.inversions, V.inversions) for V in ups)]
    assert len(least) == 1
    return least[0]


def brute_meet(T, R, trees):
    downs = [U for U in trees if contained(U.inversions, T.inversions) and contained(U.inversions, R.inversions)]
    greatest = [U for U in downs if all(contained(V.inversions, U.inversions) for V in downs)]
    assert len(greatest) == 1
    return greatest[0]


def brute_covers(trees) -> set[tuple[SDecreasingTree, SDecreasingTree]]:
    inv = {T: T.inversions for T in trees}
    below = {
        (T, R)
        for T in trees
        for R in trees
        if T != R and contained(inv[T], inv[R])
    }
    return {
        (T, R)
        for T, R in below
        if not any((T, U) in below and (U, R) in below for U in trees)
    }


def interval(T, R, trees) -> frozenset:
    return frozenset(U for U in trees if contained(T.inversions, U.inversions) and contained(U.inversions, R.inversions))


@lru_cache(maxsize=None)
def cover_graph(s) -> tuple[dict, dict]:
    from spermutahedron.enumeration import enumerate_trees

    trees = enumerate_trees(s)
    up: dict = {T: set() for T in trees}
    for T, R in brute_covers(trees):
        up[T].add(R)
    return trees, up


def pure_pairs_by_definition(s) -> set[tuple[SDecreasingTree, SDecreasingTree]]:
    """``(T, T+A)`` where ``T+A`` is the join of the covers of ``T`` chosen by ``A``.

    Ascents are identified with upper covers, so this needs no ascent code.
    """
    trees, up = cover_graph(s)
    out = set()
    for T in trees:
        covers = sorted(up[T], key=str)
        for k in range(len(covers) + 1):
            for A in combinations(covers, k):
                top = T
                for R in A:
                    top = brute_join(top, R, trees)
                out.add((T, top))
    return out


def ascent_count_by_covers(T, up) -> int:
    return len(up[T])


def f_polynomial_by_faces(s) -> list[int]:
    """Count pure intervals by dimension using the cover-defined face set."""
    trees, up = cover_graph(s)
    out = [0] * len(s)
    for T in trees:
        k = len(up[T])
        for d in range(k + 1):
            out[d] += comb(k, d)
    return out

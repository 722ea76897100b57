"""Enumerating s-decreasing trees and counting faces of the s-permutahedron."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb, prod
from typing import Iterator, Sequence

from .core import Composition, SDecreasingTree, as_composition

DEFAULT_MAX_TREES = 100_000


class SizeBoundExceeded(RuntimeError):
    pass


def max_trees_bound(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("SPERM_MAX_TREES")
    return int(env) if env else DEFAULT_MAX_TREES


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ``coefficients[k]`` multiplies ``t**k``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def of(cls, *coefficients: int) -> "IntPolynomial":
        return cls(tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        m = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self[k] + other[k] for k in range(m)))

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * x for x in self.coefficients))
        out = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, x in enumerate(self.coefficients):
            for j, y in enumerate(other.coefficients):
                out[i + j] += x * y
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "IntPolynomial":
        return IntPolynomial((0,) * k + self.coefficients)

    def __call__(self, t):
        acc = 0
        for x in reversed(self.coefficients):
            acc = acc * t + x
        return acc

    def substitute_one_plus_t(self) -> "IntPolynomial":
        out = [0] * len(self.coefficients)
        for k, x in enumerate(self.coefficients):
            for j in range(k + 1):
                out[j] += x * comb(k, j)
        return IntPolynomial(tuple(out))

    def __str__(self) -> str:
        terms = []
        for k, x in enumerate(self.coefficients):
            if x:
                terms.append(str(x) if k == 0 else f"{x}t" if k == 1 else f"{x}t^{k}")
        return " + ".join(terms) or "0"


def count_trees(s: Sequence[int]) -> int:
    """Node ``k`` is inserted into one of the ``1 + sum(s[k:])`` leaves left by larger nodes."""
    s = as_composition(s)
    return prod(1 + sum(s[k:]) for k in range(1, len(s)))


def _insertions(s: Composition) -> Iterator[list[list[int | None]]]:
    n = len(s)
    slots: list[list[int | None]] = [[None] * (m + 1) for m in s]

    def rec(k: int, leaves: list[tuple[int, int]]):
        if k == 0:
            yield slots
            return
        for j, (p, i) in enumerate(leaves):
            slots[p - 1][i] = k
            rest = leaves[:j] + leaves[j + 1 :] + [(k, t) for t in range(s[k - 1] + 1)]
            yield from rec(k - 1, rest)
            slots[p - 1][i] = None

    yield from rec(n - 1, [(n, t) for t in range(s[n - 1] + 1)])


def iter_trees(s: Sequence[int]) -> Iterator[SDecreasingTree]:
    """All s-decreasing trees in generation order (not canonical)."""
    s = as_composition(s)
    for slots in _insertions(s):
        yield SDecreasingTree(s, tuple(tuple(x) for x in slots))


def enumerate_trees(s: Sequence[int], max_trees: int | None = None) -> list[SDecreasingTree]:
    """Every s-decreasing tree once, sorted by bracket serialisation."""
    s = as_composition(s)
    bound = max_trees_bound(max_trees)
    total = count_trees(s)
    if total > bound:
        raise SizeBoundExceeded(f"{total} trees for s={s} exceeds bound {bound}")
    return sorted(iter_trees(s), key=str)


def ascent_distribution(s: Sequence[int]) -> list[int]:
    """``out[k]`` = number of trees with ``k`` tree-ascents, streamed.

    A non-root node ``a`` is the small end of a tree-ascent exactly when some
    ancestor holds it outside its last slot and, if ``a`` has several slots,
    its own last slot is empty.  Both facts are tracked during insertion, so
    no tree is materialised.
    """
    s = as_composition(s)
    n = len(s)
    counts = [0] * n
    if n == 1:
        return [1]
    up = [False] * (n + 1)

    def gain(p: int, i: int) -> tuple[bool, int]:
        sp = s[p - 1]
        u = i < sp or up[p]
        d = 1 if u else 0
        if i == sp and sp > 0 and up[p]:
            d -= 1
        return u, d

    def rec(k: int, leaves: list[tuple[int, int]], cnt: int):
        if k == 1:
            for p, i in leaves:
                counts[cnt + gain(p, i)[1]] += 1
            return
        kids = [(k, t) for t in range(s[k - 1] + 1)]
        for j, (p, i) in enumerate(leaves):
            u, d = gain(p, i)
            up[k] = u
            rec(k - 1, leaves[:j] + leaves[j + 1 :] + kids, cnt + d)

    rec(n - 1, [(n, t) for t in range(s[n - 1] + 1)], 0)
    return counts


def s_eulerian(s: Sequence[int]) -> IntPolynomial:
    return IntPolynomial(tuple(ascent_distribution(s)))


def f_polynomial_direct(s: Sequence[int]) -> IntPolynomial:
    """Sum of ``(1 + t) ** asc(T)`` over all trees."""
    return s_eulerian(s).substitute_one_plus_t()


@lru_cache(maxsize=None)
def _f_rec(s: Composition) -> IntPolynomial:
    n = len(s)
    if n == 1:
        return IntPolynomial.of(1)
    head, u, v = s[:-2], s[-2], s[-1]
    if n > 2 and u == 0:
        return _f_rec(head + (v,)) * _f_rec((0, v))
    out = (v + 1) * _f_rec(head + (u + v,))
    if v > 0:
        out = out + (v * _f_rec(head + (u + v - 1,))).shift()
    return out


def f_polynomial_recursive(s: Sequence[int]) -> IntPolynomial:
    """Face-count polynomial from the last-two-entries recursion; no enumeration."""
    return _f_rec(as_composition(s))


def reference_table() -> list[tuple[Composition, IntPolynomial]]:
    """Published f-polynomials shipped with the package, low degree first."""
    text = resources.files("spermutahedron.data").joinpath("fpoly_table.json").read_text()
    return [
        (tuple(row["s"]), IntPolynomial(tuple(row["f"])))
        for row in json.loads(text)["rows"]
    ]

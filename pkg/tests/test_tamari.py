from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_covers, sweep
from spermutahedron.core import SDecreasingTree, minimal_tree
from spermutahedron.enumeration import IntPolynomial, count_trees, enumerate_trees
from spermutahedron.tamari import (
    NotTamari,
    PureTamariInterval,
    enumerate_tamari_faces,
    enumerate_tamari_trees,
    f_polynomial_tamari,
    is_s_tamari,
    is_s_tamari_by_labels,
    narayana_numbers,
    s_catalan,
    s_narayana,
    tamari_add_ascents,
    tamari_ascents,
    tamari_hasse,
    tamari_interval_members,
    tamari_rotate,
)
from spermutahedron.weak_order import join, leq, meet, rotate, tree_ascents

parse = SDecreasingTree.parse

THREE_FACE_LOWER = "7[.,5[2[.,1[.]],3[.],4[.,.,.]],6[.,.],.]"
THREE_FACE_ASCENTS = {(2, 5), (3, 5), (5, 7)}


def test_counts_for_small_case():
    s = (0, 2, 2)
    assert s_catalan(s) == 12
    assert f_polynomial_tamari(s) == IntPolynomial.of(12, 16, 5)
    assert narayana_numbers(s) == [1, 6, 5]
    assert s_narayana(s, 1) == 6 and s_narayana(s, 7) == 0
    H = tamari_hasse(s)
    assert (len(H.vertices), len(H.edges)) == (12, 16)
    faces = enumerate_tamari_faces(s)
    assert [sum(1 for P in faces if P.dimension == d) for d in range(3)] == [12, 16, 5]


@pytest.mark.parametrize("n", range(1, 7))
def test_classical_catalan_and_narayana(n):
    s = (1,) * n
    catalan = comb(2 * n, n) // (n + 1)
    assert s_catalan(s) == catalan
    assert narayana_numbers(s) == [comb(n, k) * comb(n, k + 1) // n for k in range(n)]


def test_minimal_tree_is_tamari():
    for s in [(0, 2, 2), (2, 0, 1, 3)]:
        assert is_s_tamari(minimal_tree(s))


@pytest.mark.parametrize("s", sweep() + [(0, 2, 1, 0, 2), (2, 0, 1, 3, 1)])
def test_generator_matches_filter(s):
    filtered = {T for T in enumerate_trees(s) if is_s_tamari(T)}
    assert set(enumerate_tamari_trees(s)) == filtered
    for T in enumerate_trees(s):
        assert is_s_tamari(T) == is_s_tamari_by_labels(T)


@pytest.mark.parametrize("s", sweep())
def test_sublattice(s):
    trees = enumerate_tamari_trees(s)
    for i, T in enumerate(trees):
        for R in trees[i:]:
            assert is_s_tamari(join(T, R))
            assert is_s_tamari(meet(T, R))


@pytest.mark.parametrize("s", [s for s in sweep() if count_trees(s) <= 120])
def test_rotations_are_tamari_covers(s):
    trees = enumerate_tamari_trees(s)
    by_rotation = {(T, tamari_rotate(T, a)) for T in trees for a in tamari_ascents(T)}
    assert by_rotation == brute_covers(trees)


def test_three_dimensional_face():
    P = PureTamariInterval(parse(THREE_FACE_LOWER), frozenset(THREE_FACE_ASCENTS))
    assert {(a.a, a.c) for a in tamari_ascents(P.lower)} == THREE_FACE_ASCENTS | {(6, 7)}
    members = tamari_interval_members(P)
    assert len(members) == 10
    assert all(is_s_tamari(T) and leq(P.lower, T) and leq(T, P.upper) for T in members)
    everything = enumerate_tamari_trees(P.s)
    assert set(members) == {T for T in everything if leq(P.lower, T) and leq(T, P.upper)}


def test_errors():
    T = parse("3[2[.,.,.],1[.],.]")
    assert not is_s_tamari(T)
    with pytest.raises(NotTamari):
        tamari_rotate(T, (1, 3))
    M = minimal_tree((0, 2, 2))
    assert tamari_add_ascents(M, set()) == M


@st.composite
def tamari_tree(draw):
    s = draw(st.sampled_from([(0, 2, 2), (0, 1, 2, 1), (1, 1, 1, 1, 1), (0, 2, 0, 2, 1)]))
    return draw(st.sampled_from(enumerate_tamari_trees(s)))


@given(tamari_tree())
@settings(max_examples=150, deadline=None)
def test_tamari_rotation_properties(T):
    for asc in tamari_ascents(T):
        R = tamari_rotate(T, asc)
        assert is_s_tamari(R)
        assert leq(T, R) and R != T
        assert R.inversions[asc.c, asc.a] == T.inversions[asc.c, asc.a] + 1
    # the Tamari rotation at a weak-order ascent shared by both agrees with the weak rotation
    # whenever the weak rotation stays s-Tamari
    shared = {(x.a, x.c) for x in tree_ascents(T)} & {(x.a, x.c) for x in tamari_ascents(T)}
    for pair in shared:
        W = rotate(T, pair)
        if is_s_tamari(W):
            assert W == tamari_rotate(T, pair)

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_covers, brute_join, brute_meet, contained, sweep
from spermutahedron.core import SDecreasingTree, maximal_tree, minimal_tree
from spermutahedron.enumeration import enumerate_trees
from spermutahedron.weak_order import (
    NotAnAscent,
    add_ascents,
    hasse_diagram,
    join,
    leq,
    meet,
    rotate,
    tree_ascents,
    tree_ascents_by_inversions,
    tree_ascents_literal,
)

SMALL = [s for s in sweep() if len(enumerate_trees(s)) <= 120]

PENTAGON_LOWER = "4[3[.,2[.,1[.],.],.],.]"
TEN_LOWER = "10[8[5[.,.]],.,9[7[.,4[1[.],3[.,.,.],.]],6[.,2[.],.],.],.]"


def pairs_of(s):
    trees = enumerate_trees(s)
    return trees, [(T, R) for i, T in enumerate(trees) for R in trees[i:]]


@pytest.mark.parametrize("s", SMALL)
def test_join_meet_against_brute_force(s):
    trees, pairs = pairs_of(s)
    for T, R in pairs:
        J, Mt = join(T, R), meet(T, R)
        assert J == brute_join(T, R, trees)
        assert Mt == brute_meet(T, R, trees)
        assert join(R, T) == J and meet(R, T) == Mt


@pytest.mark.parametrize("s", SMALL)
def test_rotations_are_the_covers(s):
    trees = enumerate_trees(s)
    by_rotation = {(T, rotate(T, a)) for T in trees for a in tree_ascents(T)}
    assert by_rotation == brute_covers(trees)


@pytest.mark.parametrize("s", sweep() + [(0, 2, 1, 0, 2), (3, 0, 1, 2), (0, 0, 2, 2, 2)])
def test_three_ascent_routes_agree(s):
    for T in enumerate_trees(s):
        fast = tree_ascents(T)
        assert fast == tree_ascents_by_inversions(T) == tree_ascents_literal(T)


def test_leq_is_inclusion():
    trees = enumerate_trees((0, 2, 2))
    for T in trees:
        assert leq(T, T)
        for R in trees:
            assert leq(T, R) == contained(T.inversions, R.inversions)


def test_join_example():
    T = SDecreasingTree.parse("3[1[.],.,2[.,.,.]]")
    R = SDecreasingTree.parse("3[2[.,1[.],.],.,.]")
    assert T.inversions[3, 2] == 2 and R.inversions[2, 1] == 1
    J = join(T, R)
    assert (J.inversions[3, 2], J.inversions[3, 1], J.inversions[2, 1]) == (2, 2, 1)
    assert str(J) == "3[.,.,2[.,1[.],.]]"


def test_extremes():
    for s in [(0, 2, 2), (1, 0, 2, 1)]:
        assert tree_ascents(maximal_tree(s)) == frozenset()
        trees = enumerate_trees(s)
        assert all(leq(minimal_tree(s), T) and leq(T, maximal_tree(s)) for T in trees)


def test_pentagon_lower_tree():
    T = SDecreasingTree.parse(PENTAGON_LOWER)
    assert {(x.a, x.c) for x in tree_ascents(T)} >= {(2, 3), (3, 4)}
    R = rotate(T, (2, 3))
    assert R.inversions[3, 2] == T.inversions[3, 2] + 1
    assert R.inversions[3, 1] == T.inversions[3, 1] + 1
    top = add_ascents(T, {(2, 3), (3, 4)})
    assert str(top) == "4[.,3[.,.,2[.,1[.],.]]]"
    assert top.inversions[4, 1] == 1
    assert add_ascents(T, set()) == T


def test_ten_node_tree_ascents():
    T = SDecreasingTree.parse(TEN_LOWER)
    smaller = {x.a for x in tree_ascents(T)}
    assert {8, 5, 9, 4, 1, 6, 2} <= smaller
    # the eighth ascent (3,4) is not among the selected ones
    assert {(x.a, x.c) for x in tree_ascents(T)} - {(1, 4), (2, 6), (4, 9), (5, 10), (6, 9), (8, 10), (9, 10)} == {(3, 4)}


def test_rotate_rejects_non_ascent():
    T = minimal_tree((0, 2, 2))
    with pytest.raises(NotAnAscent):
        rotate(T, (1, 3))


@pytest.mark.parametrize(
    "s,vertices,edges",
    [((0, 2, 2), 15, 20), ((0, 0, 2), 9, 12), ((0, 4), 5, 4), ((3, 1), 2, 1), ((2, 0), 1, 0)],
)
def test_hasse_sizes(s, vertices, edges):
    H = hasse_diagram(s)
    assert (len(H.vertices), len(H.edges)) == (vertices, edges)


def test_hasse_is_a_chain_for_two_nodes():
    H = hasse_diagram((0, 3))
    out = [i for i, *_ in H.edges]
    into = [j for _, j, *_ in H.edges]
    assert len(H.edges) == 3 and len(set(out)) == 3 and len(set(into)) == 3
    dot = H.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 3


@st.composite
def tree_triples(draw):
    s = draw(st.sampled_from([(0, 2, 2), (0, 1, 2, 1), (1, 1, 1, 1), (0, 2, 0, 2), (0, 1, 1, 2)]))
    trees = enumerate_trees(s)
    pick = st.sampled_from(trees)
    return draw(pick), draw(pick), draw(pick)


@given(tree_triples())
@settings(max_examples=200, deadline=None)
def test_lattice_laws(triple):
    A, B, C = triple
    assert join(A, join(B, C)) == join(join(A, B), C)
    assert meet(A, meet(B, C)) == meet(meet(A, B), C)
    assert join(A, meet(A, B)) == A
    assert meet(A, join(A, B)) == A
    assert leq(A, B) == (join(A, B) == B) == (meet(A, B) == A)

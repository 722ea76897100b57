from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    all_multisets,
    closure_fixed_point,
    planar_by_definition,
    sweep,
    transitive_by_definition,
    trees_by_filter,
    trees_by_insertion,
)
from spermutahedron.core import (
    CompositionError,
    InvalidInversions,
    InversionMultiset,
    SDecreasingTree,
    complement,
    inversions_to_tree,
    is_planar,
    is_transitive,
    maximal_multiset,
    maximal_tree,
    minimal_tree,
    parse_composition,
    transitive_closure,
    union,
)
from spermutahedron.enumeration import enumerate_trees

M = InversionMultiset.from_mapping

# tree from the worked example with s = (0,0,2,1,3)
EXAMPLE_TREE = "5[4[.,.],.,3[.,.,2[1[.]]],.]"
EXAMPLE_CARD = {
    (2, 1): 0,
    (3, 1): 2,
    (3, 2): 2,
    (4, 1): 1,
    (4, 2): 1,
    (4, 3): 1,
    (5, 1): 2,
    (5, 2): 2,
    (5, 3): 2,
    (5, 4): 0,
}


def compositions(max_n=5, max_entry=3):
    return st.lists(st.integers(0, max_entry), min_size=1, max_size=max_n).map(tuple)


@st.composite
def multisets(draw, max_n=5, max_entry=3):
    s = draw(st.lists(st.integers(0, max_entry), min_size=1, max_size=max_n).map(tuple))
    n = len(s)
    card = {(c, a): draw(st.integers(0, s[c - 1])) for c in range(2, n + 1) for a in range(1, c)}
    return s, M(n, card)


class TestCompositions:
    def test_parse(self):
        assert parse_composition("0,2,2") == (0, 2, 2)
        assert parse_composition(" 1 , 0 ") == (1, 0)

    @pytest.mark.parametrize("bad", ["x", "", "1,,2", "-1,2", "1.5", "1;2"])
    def test_parse_rejects(self, bad):
        with pytest.raises(CompositionError):
            parse_composition(bad)


class TestPredicates:
    def test_zero_multiset(self):
        I = InversionMultiset.zeros(4)
        assert is_transitive(I)
        assert is_planar(I, (0, 2, 2, 1))

    def test_transitivity_counterexample(self):
        assert not is_transitive(M(3, {(2, 1): 1, (3, 2): 2}))

    def test_planarity_small_case(self):
        # card(2,1) < s(2) forces card(3,1) <= card(3,2); here both are 0
        assert is_planar(M(3, {(2, 1): 1}), (0, 2, 2))
        assert not is_planar(M(3, {(2, 1): 1, (3, 1): 1}), (0, 2, 2))

    def test_tree_multisets_are_transitive_and_planar(self):
        s = (0, 2, 2)
        trees = enumerate_trees(s)
        assert len(trees) == 15
        for T in trees:
            assert is_transitive(T.inversions)
            assert is_planar(T.inversions, s)

    @pytest.mark.parametrize("s", [s for s in sweep() if len(s) <= 4] + [(1, 3, 2, 3), (3, 3, 3, 3), (0, 3, 0, 3)])
    def test_characterization_exhaustive(self, s):
        # a multiset is the inversion set of a tree iff it is transitive and planar
        box = all_multisets(s)
        by_filter = {I for I in box if transitive_by_definition(I) and planar_by_definition(I, s)}
        by_package = {I for I in box if is_transitive(I) and is_planar(I, s)}
        assert by_filter == by_package
        assert by_filter == {T.inversions for T in enumerate_trees(s)}
        assert by_filter == {T.inversions for T in trees_by_insertion(s)}

    @given(multisets())
    @settings(max_examples=300, deadline=None)
    def test_predicates_match_definitions(self, sI):
        s, I = sI
        assert is_transitive(I) == transitive_by_definition(I)
        assert is_planar(I, s) == planar_by_definition(I, s)

    @given(multisets())
    @settings(max_examples=200, deadline=None)
    def test_complement_swaps_conditions(self, sI):
        s, I = sI
        J = complement(I, s)
        assert complement(J, s) == I
        assert is_transitive(I) == planar_by_definition(J, s)
        assert planar_by_definition(I, s) == is_transitive(J)


class TestClosure:
    def test_worked_union(self):
        I = union(M(3, {(3, 2): 2}), M(3, {(2, 1): 1}))
        assert I == M(3, {(3, 2): 2, (2, 1): 1})
        tc = transitive_closure(I)
        assert tc[3, 1] == 2 and tc[3, 2] == 2 and tc[2, 1] == 1

    @given(multisets(max_n=6))
    @settings(max_examples=400, deadline=None)
    def test_matches_fixed_point(self, sI):
        _, I = sI
        tc = transitive_closure(I)
        assert tc == closure_fixed_point(I)
        assert transitive_closure(tc) == tc
        assert all(I[k] <= tc[k] for k in I.pairs())

    @pytest.mark.parametrize("s", sweep())
    def test_exhaustive_on_sweep(self, s):
        for I in all_multisets(s) if _box(s) <= 5000 else []:
            assert transitive_closure(I) == closure_fixed_point(I)


def _box(s) -> int:
    out = 1
    for c in range(2, len(s) + 1):
        out *= (s[c - 1] + 1) ** (c - 1)
    return out


class TestTrees:
    def test_example_inversions(self):
        T = SDecreasingTree.parse(EXAMPLE_TREE)
        assert T.s == (0, 0, 2, 1, 3)
        assert dict(T.inversions.items()) == EXAMPLE_CARD
        assert inversions_to_tree(M(5, EXAMPLE_CARD), T.s) == T

    def test_minimal_tree(self):
        for s in [(0, 2, 2), (1, 0, 3, 2), (4,)]:
            T = minimal_tree(s)
            assert T.inversions == InversionMultiset.zeros(len(s))
            assert inversions_to_tree(InversionMultiset.zeros(len(s)), s) == T
            assert maximal_tree(s).inversions == maximal_multiset(s)

    def test_serialisation(self):
        T = SDecreasingTree.parse(EXAMPLE_TREE)
        assert str(T) == EXAMPLE_TREE
        assert SDecreasingTree.from_json(T.to_json()) == T
        assert SDecreasingTree.from_nested(T.to_nested(), T.s) == T
        I, s = InversionMultiset.from_json(T.inversions.to_json(T.s))
        assert (I, s) == (T.inversions, T.s)

    @pytest.mark.parametrize("s", sweep())
    def test_round_trip_exhaustive(self, s):
        trees = enumerate_trees(s)
        assert len({T.inversions for T in trees}) == len(trees)
        for T in trees:
            assert inversions_to_tree(T.inversions, s) == T

    def test_invalid_multiset_names_triple(self):
        with pytest.raises(InvalidInversions) as err:
            inversions_to_tree(M(3, {(2, 1): 1, (3, 2): 2}), (0, 2, 2))
        assert err.value.condition == "transitivity"
        assert err.value.triple == (1, 2, 3)
        with pytest.raises(InvalidInversions) as err:
            inversions_to_tree(M(3, {(2, 1): 1, (3, 1): 1}), (0, 2, 2))
        assert err.value.condition == "planarity"
        with pytest.raises(InvalidInversions):
            inversions_to_tree(M(3, {(3, 1): 3}), (0, 2, 2))

    @given(multisets(max_n=5))
    @settings(max_examples=300, deadline=None)
    def test_round_trip_property(self, sI):
        s, I = sI
        if transitive_by_definition(I) and planar_by_definition(I, s):
            assert inversions_to_tree(I, s).inversions == I
        else:
            with pytest.raises(InvalidInversions):
                inversions_to_tree(I, s)


def test_filter_oracle_counts_trees():
    assert len(trees_by_filter((2, 2, 2, 2))) == 105

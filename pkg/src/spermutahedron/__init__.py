"""s-decreasing trees and the lattices, complexes and polytopes built on them."""

from .core import (
    CompositionError,
    InvalidInversions,
    InversionMultiset,
    SDecreasingTree,
    complement,
    inversions_to_tree,
    is_planar,
    is_transitive,
    maximal_tree,
    minimal_tree,
    parse_composition,
    transitive_closure,
    tree_to_inversions,
    union,
)
from .enumeration import (
    IntPolynomial,
    SizeBoundExceeded,
    count_trees,
    enumerate_trees,
    f_polynomial_direct,
    f_polynomial_recursive,
    s_eulerian,
)
from .pure_intervals import PureInterval, enumerate_faces, intersect, is_pure_interval, variations, verify_complex
from .tamari import PureTamariInterval, enumerate_tamari_trees, is_s_tamari, s_catalan, tamari_ascents, tamari_rotate
from .weak_order import add_ascents, join, leq, meet, rotate, tree_ascents

__version__ = "0.1.0"

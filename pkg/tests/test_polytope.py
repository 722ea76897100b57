from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spermutahedron.polytope import Polytope, affine_dimension, cross, dot, sub

scipy_spatial = pytest.importorskip("scipy.spatial")


def test_cube():
    P = Polytope.hull(list(product((0, 1), repeat=3)))
    assert P.dim == 3 and P.f_vector() == [8, 12, 6, 1]
    assert P.volume() == 1 and P.in_convex_position


def test_square_with_interior_point():
    P = Polytope.hull([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)])
    assert P.f_vector() == [4, 4, 1]
    assert P.volume() == 4
    assert not P.in_convex_position
    assert sorted(len(f) for f in P.supporting_sets()) == [2, 2, 2, 3]


def test_pyramid_groups_coplanar_triangles():
    P = Polytope.hull([(0, 0, 0), (2, 0, 0), (2, 2, 0), (0, 2, 0), (1, 1, 3)])
    assert P.f_vector() == [5, 8, 5, 1]
    assert P.volume() == 4


def test_octahedron():
    pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    P = Polytope.hull(pts)
    assert P.f_vector() == [6, 12, 8, 1]
    assert P.volume() == Fraction(4, 3)


def test_lower_dimensions():
    assert Polytope.hull([(1, 1, 1)]).dim == 0
    seg = Polytope.hull([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    assert seg.dim == 1 and seg.vertices == {0, 2}
    flat = Polytope.hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert flat.dim == 2 and flat.f_vector() == [4, 4, 1]
    assert affine_dimension([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]) == 3


def _direction(nrm):
    first = next(x for x in nrm if x)
    return tuple(Fraction(x) / first for x in nrm)


def facet_directions_by_brute_force(points):
    """Normals of supporting planes spanned by triples, up to sign and scale."""
    out = set()
    for a, b, c in combinations(points, 3):
        nrm = cross(sub(b, a), sub(c, a))
        if not any(nrm):
            continue
        sides = {(dot(nrm, p) > dot(nrm, a)) - (dot(nrm, p) < dot(nrm, a)) for p in points}
        if {1, -1} <= sides:
            continue
        out.add(_direction(nrm))
    return out


point3 = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))


@given(st.lists(point3, min_size=4, max_size=12, unique=True))
@settings(max_examples=150, deadline=None)
def test_random_hulls(points):
    if affine_dimension(points) < 3:
        return
    P = Polytope.hull(points)
    assert {_direction(n) for n, _ in P.planes} == facet_directions_by_brute_force(P.points)
    ref = scipy_spatial.ConvexHull(points)
    assert abs(float(P.volume()) - ref.volume) < 1e-9
    assert {points[i] for i in P.vertices} == {tuple(points[i]) for i in ref.vertices}
    f = P.f_vector()
    assert f[0] - f[1] + f[2] == 2


point2 = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@given(st.lists(point2, min_size=3, max_size=12, unique=True))
@settings(max_examples=150, deadline=None)
def test_random_polygons(points):
    if affine_dimension(points) < 2:
        return
    P = Polytope.hull(points)
    ref = scipy_spatial.ConvexHull(points)
    assert abs(float(P.volume()) - ref.volume) < 1e-9
    assert {points[i] for i in P.vertices} == {tuple(points[i]) for i in ref.vertices}

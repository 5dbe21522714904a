import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gorenstein_fans import linalg as la
from gorenstein_fans.cone import cone_from_generators, extreme_rays, face_lattice, facet_normals, gorenstein_form
from gorenstein_fans.errors import NonIntegral, NoRationalSolution, NotGorenstein, NotPointed, NotSimplicial, ZeroVector

from conftest import cone_over, cross_polytope_vertices, cube_vertices


def brute_facets(rays, n):
    """Facet normals by trying every hyperplane through n-1 rays."""
    out = set()
    for subset in itertools.combinations(rays, n - 1):
        if la.rank(subset) != n - 1:
            continue
        (a,) = la.nullspace(subset)
        vals = [la.dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            out.add(a)
        elif all(v <= 0 for v in vals):
            out.add(tuple(-x for x in a))
    return out


def test_redundant_generator_dropped():
    C = cone_from_generators([(1, 0), (1, 2), (1, 1)])
    assert set(C.rays) == {(1, 0), (1, 2)}
    assert set(facet_normals(C)) == {(0, 1), (2, -1)}
    assert gorenstein_form(C).local == gorenstein_form(C).local
    assert gorenstein_form(C)((1, 0)) == 1 and gorenstein_form(C)((1, 2)) == 1
    assert gorenstein_form(C).covector == (1, 0)


def test_square_cone():
    C = cone_over([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert set(facet_normals(C)) == {(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)}
    assert len(C.faces()) == 10
    assert not C.is_simplicial
    assert gorenstein_form(C).covector == (0, 0, 1)


def test_face_counts():
    cube = cone_over(cube_vertices(3))
    sizes = sorted(f.dim for f in cube.faces().values())
    assert [sizes.count(k) for k in range(5)] == [1, 8, 12, 6, 1]
    octa = cone_over(cross_polytope_vertices(3))
    sizes = sorted(f.dim for f in octa.faces().values())
    assert [sizes.count(k) for k in range(5)] == [1, 6, 12, 8, 1]
    L = face_lattice(cube)
    # every length-2 interval is a diamond
    for y in L.elements:
        for x in L.below[y]:
            if L.rank[y] - L.rank[x] == 2:
                assert len(L.interval(x, y)) == 4


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_facets_match_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    gens = [tuple(rng.randint(-3, 3) for _ in range(n - 1)) + (rng.randint(1, 3),) for _ in range(n + 2)]
    C = cone_from_generators(gens)
    if C.dim < n:
        return
    assert set(facet_normals(C)) == brute_facets(C.rays, n)
    # extreme rays of the dual description give back the rays
    assert set(extreme_rays(facet_normals(C), n)) == set(C.rays)
    for g in gens:
        assert C.contains(g)


def test_lower_dimensional_cone():
    C = cone_from_generators([(1, 1, 0), (1, 0, 0)])
    assert C.dim == 2 and C.ambient_dim == 3
    assert not C.contains((0, 0, 1))
    assert C.contains((3, 1, 0))
    ray = cone_from_generators([(1, 1)])
    K = gorenstein_form(ray)
    assert K.covector == (Fraction(1, 2), Fraction(1, 2))
    assert K((1, 1)) == 1


def test_errors():
    with pytest.raises(ZeroVector):
        cone_from_generators([(0, 0)])
    with pytest.raises(NotPointed):
        cone_from_generators([(1, 0), (-1, 0)])
    with pytest.raises(NotPointed):
        cone_from_generators([(1, 0), (0, 1), (-1, -1)])
    with pytest.raises(NotGorenstein):
        gorenstein_form(cone_from_generators([(1, 0, 0), (0, 1, 0), (1, 1, 2)]))
    # four rays not on a common affine hyperplane
    with pytest.raises(NoRationalSolution) as info:
        gorenstein_form(cone_from_generators([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2)]))
    assert isinstance(info.value, NotGorenstein)
    with pytest.raises(NotSimplicial):
        cone_over([(-1, -1), (1, -1), (1, 1), (-1, 1)]).box_points()


def test_non_integral_witness():
    edge = cone_from_generators([(1, 0, 0), (1, 2, 0)])
    assert gorenstein_form(edge)((1, 1, 0)) == 1
    bad = cone_from_generators([(1, 0, 0), (0, 1, 0), (1, 1, 2)])
    with pytest.raises(NonIntegral) as info:
        gorenstein_form(bad)
    assert info.value.witness == (1, 1, 1)
    assert info.value.value == Fraction(3, 2)


def test_cube_edge_box():
    C = cone_from_generators([(1, 1, 1), (1, -1, 1)])
    C3 = cone_from_generators([(1, 1, 1), (1, -1, 1), (1, 1, -1)])
    assert gorenstein_form(C3).covector == (1, 0, 0)
    assert C.dim == 2
    pts = sorted(p for p, _ in cone_from_generators([(1, 1, 0), (1, -1, 0)]).box_points())
    assert pts == [(0, 0, 0), (1, 0, 0)]

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from gorenstein_fans import linalg as la
from gorenstein_fans.cone import cone_from_generators
from gorenstein_fans.decomposition import (
    c_polynomials,
    h_V,
    interval_g,
    local_c,
    polytope_resummation,
    verify_identity,
    verify_polytope_formula,
    verify_subdivision_invariance,
)
from gorenstein_fans.ehrhart import delta_of_cone, interior_box_polynomial
from gorenstein_fans.errors import NotComplete
from gorenstein_fans.families import (
    cross_polytope_fan,
    cube_cone,
    cube_fan,
    projective_space_fan,
    random_simplicial_fan,
    random_simplicial_gorenstein_cone,
    random_unimodular,
)
from gorenstein_fans.fan import fan_from_max_cones
from gorenstein_fans.polynomial import ONE, T_MINUS_ONE, IntPolynomial
from gorenstein_fans.subdivision import crepant_subdivide, level_one_points, stellar_subdivide

P = IntPolynomial


def by_dim(fan, values):
    out = {}
    for i, v in values.items():
        out.setdefault(fan.cones[i].dim, set()).add(v)
    return out


def simplicial_h(fan):
    n = fan.ambient_dim
    return sum((T_MINUS_ONE ** (n - c.dim) for c in fan), P())


def test_square_fan():
    fan = cube_fan(2)
    c = c_polynomials(fan)
    assert by_dim(fan, c) == {0: {ONE}, 1: {P()}, 2: {P([0, 1])}}
    assert h_V(fan, 0) == P([1, 2, 1])
    rep = verify_identity(fan)
    assert rep.delta == P([1, 6, 1]) and rep.verified


def test_cube_fan_polynomials():
    fan = cube_fan(3)
    c = c_polynomials(fan)
    assert by_dim(fan, c) == {0: {ONE}, 1: {P()}, 2: {P([0, 1])}, 3: {P([0, 1, 1])}}
    assert h_V(fan, 0) == P([1, 5, 5, 1])
    heights = {fan.cones[i].dim: h_V(fan, i) for i in fan.cones}
    assert heights[1] == P([1, 1, 1]) and heights[2] == P([1, 1]) and heights[3] == ONE


def test_smooth_fans():
    for fan in (projective_space_fan(2), projective_space_fan(3), cross_polytope_fan(3), cross_polytope_fan(4)):
        rep = verify_identity(fan)
        assert rep.verified
        assert all(r.c == P() for r in rep.records if r.dim > 0)
        assert rep.delta == h_V(fan, 0) == simplicial_h(fan)


def test_h_v_requires_complete():
    fan = fan_from_max_cones(2, [[(1, 0), (0, 1)]])
    with pytest.raises(NotComplete):
        h_V(fan, 0)


@pytest.mark.parametrize("seed", range(6))
def test_h_v_properties(seed):
    fan = random_simplicial_fan(seed)
    n = fan.ambient_dim
    assert h_V(fan, 0) == simplicial_h(fan)
    for i, cone in fan.cones.items():
        h = h_V(fan, i)
        assert h.is_palindromic(n - cone.dim)
        assert h.is_nonnegative()


def test_cone_over_cube():
    C = cube_cone(3)
    assert local_c(C) == P([0, 1, 17, 1])
    rep = verify_polytope_formula(C)
    assert rep.verified
    assert rep.delta == P([1, 23, 23, 1])
    assert interval_g(C, frozenset()) == P([1, 4])
    assert interval_g(C, frozenset(), "opposite") == P([1, 2])
    assert polytope_resummation(C, "plain") == rep.delta
    # the two orientations differ on the cube, so only one can reproduce delta
    assert polytope_resummation(C, "opposite") != rep.delta


def test_polytope_formula_octahedron_cone():
    verts = [tuple(s if j == i else 0 for j in range(3)) for i in range(3) for s in (1, -1)]
    C = cone_from_generators([v + (1,) for v in verts])
    rep = verify_polytope_formula(C)
    assert rep.verified and rep.delta == P([1, 3, 3, 1])


def transformed(cone, U):
    return cone_from_generators([la.matvec(U, r) for r in cone.rays])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_simplicial_c_is_interior_box(seed):
    rng = random.Random(seed)
    cone = random_simplicial_gorenstein_cone(rng, max_dim=4, max_index=50)
    c = local_c(cone)
    assert c == interior_box_polynomial(cone)
    assert c.is_nonnegative()
    # lattice-invariant: unimodular images have the same local polynomial
    assert local_c(transformed(cone, random_unimodular(cone.ambient_dim, rng))) == c


def test_locality():
    # the square cone has the same c inside the cube fan and on its own
    fan = cube_fan(3)
    sq = next(fan.cones[i] for i in fan.max_cone_ids)
    alone = cone_from_generators(sq.rays)
    assert local_c(alone) == c_polynomials(fan)[fan.id_of(sq)] == P([0, 1, 1])
    U = random_unimodular(3, random.Random(2))
    assert local_c(transformed(sq, U)) == P([0, 1, 1])


def test_nonsimplicial_cone_c_nonnegative():
    # cone over a hexagon and over a triangular prism
    hexagon = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    prism = [(x, y, z) for (x, y) in [(1, 0), (0, 1), (-1, -1)] for z in (-1, 1)]
    for verts in (hexagon, prism):
        C = cone_from_generators([v + (1,) for v in verts])
        assert local_c(C).is_nonnegative()
        assert verify_polytope_formula(C).verified


@pytest.mark.parametrize("d", [2, 3])
def test_crepant_subdivision_invariance(d):
    rep = verify_subdivision_invariance(cube_fan(d), orders=("deep", "lex", "revlex", "random"), seed=5)
    assert rep.verified
    assert rep.delta_invariant


def test_subdivided_cube():
    sub = crepant_subdivide(cube_fan(3))
    assert sub.f_vector() == (14, 36, 24)
    rep = verify_identity(sub)
    cs = [r.c for r in rep.records if r.dim > 0]
    assert cs.count(P([0, 1])) == 12 and cs.count(P()) == len(cs) - 12
    assert rep.verified and rep.delta == P([1, 23, 23, 1])
    assert h_V(sub, 0) == P([1, 11, 11, 1])


def test_square_fan_unchanged_by_deep_pulling():
    assert crepant_subdivide(cube_fan(2)) == cube_fan(2)


def test_stellar_subdivision():
    fan = crepant_subdivide(cube_fan(3), order="lex")
    before = verify_identity(fan)
    rays = set(fan.rays)
    for v in [p for p in level_one_points(fan) if p not in rays][:3]:
        star = stellar_subdivide(fan, v)
        rep = verify_identity(star)
        assert rep.verified and rep.delta == before.delta
        assert len(star.rays) == len(fan.rays) + 1


@pytest.mark.parametrize("seed", range(8))
def test_random_fans_verified(seed):
    rep = verify_identity(random_simplicial_fan(seed))
    assert rep.verified
    assert all(r.c_palindromic for r in rep.records)


def test_orientation_variants_on_four_cube():
    fan = cube_fan(4)
    plain = verify_identity(fan)
    assert plain.verified and plain.delta == P([1, 76, 230, 76, 1])
    assert h_V(fan, 0) == P([1, 12, 14, 12, 1])
    # reversed intervals used consistently in c and h_V: the identity still regroups correctly
    opp = verify_identity(fan, orientation="opposite")
    assert opp.verified and opp.delta == plain.delta
    # mixing the two conventions breaks it
    c_opp = c_polynomials(fan, "opposite")
    mixed = sum((c_opp[i] * h_V(fan, i) for i in fan.cones), P())
    assert mixed == P([1, 92, 230, 76, 1]) != plain.delta


def test_orientation_variants_on_cube_cone():
    C = cube_cone(3)
    assert local_c(C, "opposite") == P([0, 3, 17, 1])
    assert not local_c(C, "opposite").is_palindromic(4)
    assert polytope_resummation(C, "opposite", c_orientation="opposite") == P([1, 23, 23, 1])
    assert verify_polytope_formula(C, orientation="opposite").verified
    with pytest.raises(ValueError):
        local_c(C, "sideways")

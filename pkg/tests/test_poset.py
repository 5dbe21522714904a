import random

import pytest
from hypothesis import given, settings, strategies as st

from gorenstein_fans.cone import cone_from_generators, face_lattice
from gorenstein_fans.errors import NotComparable, NotEulerian, NotGraded
from gorenstein_fans.polynomial import T_MINUS_ONE, IntPolynomial
from gorenstein_fans.poset import (
    CACHE,
    GradedPoset,
    boolean_lattice,
    chain,
    g_poly,
    h_poly,
    is_eulerian,
    lower_g,
    opposite,
)

from conftest import cone_over, cross_polytope_vertices, cube_vertices, polygon_lattice

P = IntPolynomial


@pytest.mark.parametrize("m", range(3, 9))
def test_polygon(m):
    L = polygon_lattice(m)
    assert is_eulerian(L)
    assert h_poly(L) == P([1, m - 2, 1])
    assert g_poly(L) == P([1, m - 3])


def test_cube_and_octahedron():
    cube = face_lattice(cone_over(cube_vertices(3)))
    octa = face_lattice(cone_over(cross_polytope_vertices(3)))
    assert len(cube) == 28 and len(octa) == 28
    assert h_poly(cube) == P([1, 5, 5, 1]) and g_poly(cube) == P([1, 4])
    assert h_poly(octa) == P([1, 3, 3, 1]) and g_poly(octa) == P([1, 2])
    # the two lattices are opposite to each other
    assert g_poly(opposite(cube)) == g_poly(octa)


def test_small_cases():
    assert g_poly(chain(1)) == P([1])
    assert h_poly(chain(2)) == P([1])
    for n in range(5):
        assert g_poly(boolean_lattice(n)) == P([1])
        # boundary of an (n-1)-simplex
        assert h_poly(boolean_lattice(n)) == (P([1]) if n == 0 else P([1] * n))


def test_eulerian_examples():
    assert is_eulerian(boolean_lattice(3))
    assert is_eulerian(chain(2))
    assert not is_eulerian(chain(3))
    with pytest.raises(NotEulerian):
        g_poly(chain(3))
    # non-Eulerian value stored with check=False must not leak through the memo
    g_poly(chain(4), check=False)
    with pytest.raises(NotEulerian):
        g_poly(chain(4))


def test_not_graded():
    with pytest.raises(NotGraded):
        GradedPoset({0: [], 1: [0], 2: [0, 1], 3: [0], 4: [0, 1, 2, 3]})
    with pytest.raises(NotGraded):
        GradedPoset({0: [], 1: []})
    star = GradedPoset({0: [], 1: [0], 2: [0]})
    with pytest.raises(NotGraded):
        g_poly(star)


def test_interval_and_upper():
    B = boolean_lattice(3)
    a, ab = frozenset({0}), frozenset({0, 1})
    I = B.interval(a, frozenset({0, 1, 2}))
    assert len(I) == 4 and I.height == 2
    assert len(B.upper(ab)) == 2
    with pytest.raises(NotComparable):
        B.interval(ab, frozenset({2}))


def simplicial_h(L):
    """Classical h-vector of a simplicial polytope from its f-vector."""
    d = L.height - 1
    total = IntPolynomial()
    for x in L.elements:
        if x != L.top:
            total = total + T_MINUS_ONE ** (d - L.rank[x])
    return total


def random_polytope(seed, dim):
    rng = random.Random(seed)
    while True:
        pts = {tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(dim + 3)}
        try:
            C = cone_from_generators([p + (1,) for p in pts])
        except Exception:
            continue
        if C.dim == dim + 1:
            return C


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_random_polytope_lattices(seed, dim):
    C = random_polytope(seed, dim)
    L = face_lattice(C)
    assert is_eulerian(L)
    h = h_poly(L)
    assert h.is_palindromic(dim)
    assert g_poly(L).is_nonnegative()
    if C.is_simplicial or all(f.is_simplicial for F, f in C.faces().items() if f is not C):
        assert h == simplicial_h(L)


def test_memo_is_invisible():
    lattices = [face_lattice(cone_over(cube_vertices(3))), face_lattice(cone_over(cross_polytope_vertices(3)))]
    lattices += [polygon_lattice(m) for m in range(3, 7)]
    intervals = [L.interval(x, L.top) for L in lattices for x in L.elements]
    CACHE.clear()
    cached = [g_poly(I) for I in intervals]
    assert CACHE.hits > 0
    fresh = []
    for I in intervals:
        CACHE.clear()
        fresh.append(g_poly(I))
    assert cached == fresh
    # lower_g does not touch the memo at all
    for L in lattices:
        g = lower_g(L)
        assert g[L.top] == g_poly(L)

import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gorenstein_fans import linalg as la
from gorenstein_fans.errors import RankDeficient, ZeroVector

small = st.integers(-9, 9)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    )


def minors_gcd(A, k):
    m, n = la.shape(A)
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            g = math.gcd(g, la.det([[A[i][j] for j in cols] for i in rows]))
    return g


def test_snf_examples():
    assert la.smith_normal_form([[2, 4], [6, 8]]).invariant_factors == (2, 4)
    assert la.smith_normal_form([[2, 0], [0, 3]]).invariant_factors == (1, 6)
    assert la.smith_normal_form([[0, 0], [0, 0]]).invariant_factors == ()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_contract(A):
    res = la.smith_normal_form(A)
    A = la.as_matrix(A)
    assert la.matmul(la.matmul(res.U, A), res.V) == res.S
    assert abs(la.det(res.U)) == 1 and abs(la.det(res.V)) == 1
    m, n = la.shape(A)
    for i in range(m):
        for j in range(n):
            if i != j:
                assert res.S[i][j] == 0
    d = res.invariant_factors
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_snf_matches_minor_gcds(A):
    # d_1 ... d_k equals the gcd of the k x k minors
    d = la.smith_normal_form(A).invariant_factors
    prod = 1
    for k in range(1, min(la.shape(A)) + 1):
        g = minors_gcd(la.as_matrix(A), k)
        if k <= len(d):
            prod *= d[k - 1]
            assert g == prod
        else:
            assert g == 0


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4))
def test_snf_matches_sympy(A):
    ours = la.smith_normal_form(A).invariant_factors
    S = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    theirs = tuple(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)
    assert ours == theirs


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4))
def test_rank_and_det_match_sympy(A):
    M = sympy.Matrix(A)
    assert la.rank(A) == M.rank()
    if len(A) == len(A[0]):
        assert la.det(A) == M.det()


@settings(max_examples=100, deadline=None)
@given(matrices(3, 4))
def test_nullspace(A):
    basis = la.nullspace(A)
    assert len(basis) == len(A[0]) - la.rank(A)
    for v in basis:
        assert la.matvec(A, v) == (0,) * len(A)
        assert math.gcd(*v) == 1


def test_solve_rational():
    assert la.solve_rational([[1, 1]], [3]) == (Fraction(3, 2), Fraction(3, 2))
    assert la.solve_rational([[1, 1], [2, 2]], [1, 3]) is None
    x = la.solve_rational([[2, 1], [1, 3]], [1, 2])
    assert la.matvec([[2, 1], [1, 3]], x) == (1, 2)


def test_inverse():
    A = [[2, 1], [1, 1]]
    assert la.matmul(A, la.inverse(A)) == ((1, 0), (0, 1))
    with pytest.raises(RankDeficient):
        la.inverse([[1, 2], [2, 4]])


def test_primitive_vector():
    assert la.primitive_vector((4, -6, 0)) == (2, -3, 0)
    with pytest.raises(ZeroVector):
        la.primitive_vector((0, 0))


@given(st.lists(small, min_size=1, max_size=5).filter(any))
def test_primitive_idempotent(v):
    p = la.primitive_vector(v)
    assert la.primitive_vector(p) == p
    assert math.gcd(*p) == 1


def test_lattice_index():
    cols = lambda *gens: la.transpose(gens)
    assert la.lattice_index(cols((1, 0), (1, 2))) == 2
    assert la.lattice_index(cols((1, 0, 0), (0, 1, 0))) == 1
    assert la.lattice_index(cols((1, 1, 0), (0, 0, 3))) == 3
    with pytest.raises(RankDeficient):
        la.lattice_index(cols((1, 2), (2, 4)))


def test_saturation_basis():
    B = la.saturation_basis([(2, 2, 0), (0, 0, 4)], 3)
    assert la.rank(B) == 2
    # the basis spans the saturated lattice {x = y}
    assert la.lattice_index(B) == 1
    assert B[0] == B[1]


def test_enumerate_integer_box():
    pts = list(la.enumerate_integer_box((0, -1), (1, 1)))
    assert pts == [(0, -1), (0, 0), (0, 1), (1, -1), (1, 0), (1, 1)]
    assert list(la.enumerate_integer_box((1,), (0,))) == []

"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples, vectors are tuples. Integer entries are
Python ints, rational entries are :class:`fractions.Fraction`. Nothing here
touches floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import RankDeficient, ZeroVector

IntVec = tuple
IntMatrix = tuple


def as_matrix(rows) -> IntMatrix:
    return tuple(tuple(r) for r in rows)


def shape(A) -> tuple[int, int]:
    if not A:
        return 0, 0
    return len(A), len(A[0])


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A)) if A else ()


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def primitive_vector(v: Sequence[int]) -> IntVec:
    """Divide ``v`` by the gcd of its entries."""
    g = math.gcd(*v) if v else 0
    if g == 0:
        raise ZeroVector("cannot normalize the zero vector")
    return tuple(x // g for x in v)


def primitive_rational(v: Sequence[Fraction]) -> IntVec:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = math.lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return primitive_vector(tuple(int(Fraction(x) * den) for x in v))


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        m, n = shape(self.S)
        return tuple(self.S[i][i] for i in range(min(m, n)) if self.S[i][i] != 0)


def smith_normal_form(A) -> SnfResult:
    """Return unimodular ``U``, ``V`` and diagonal ``S`` with ``U A V = S``.

    Pivots are chosen as the smallest nonzero absolute value in the remaining
    block, ties broken by row-major position, so the output is reproducible.
    """
    m, n = len(A), (len(A[0]) if A else 0)
    S = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (S, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (S, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(S[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SnfResult(as_matrix(U), as_matrix(S), as_matrix(V))


# --------------------------------------------------------------------------
# Rational elimination


def rref(A):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols: Optional[int] = None) -> list[IntVec]:
    """Primitive integer basis of the rational kernel of ``A``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    rows, pivots = rref(A) if A else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            x[pc] = -row[f]
        basis.append(primitive_rational(x))
    return basis


def det(A) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse(A):
    """Rational inverse of a square matrix (raises RankDeficient if singular)."""
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise RankDeficient("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows[:n])


def solve_rational(A, b) -> Optional[tuple]:
    """Solve ``A x = b`` exactly.

    Returns ``None`` when inconsistent. For underdetermined systems the
    solution lying in the row space of ``A`` is returned, which makes the
    answer unique.
    """
    n = len(A[0]) if A else 0
    if not A:
        return tuple(Fraction(0) for _ in range(n))
    aug = [list(row) + [b_i] for row, b_i in zip(A, b)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x0 = [Fraction(0)] * n
    for row, pc in zip(rows, pivots):
        x0[pc] = row[n]
    R, _ = rref(A)
    if not R:
        return tuple(x0)
    # project onto the row space: x = R^T (R R^T)^{-1} R x0
    gram = [[dot(r1, r2) for r2 in R] for r1 in R]
    y = matvec(inverse(gram), matvec(R, x0))
    return tuple(sum((R[k][i] * y[k] for k in range(len(R))), Fraction(0)) for i in range(n))


def lattice_index(gens) -> int:
    """Index of the lattice spanned by the columns of ``gens`` in its saturation."""
    ncols = len(gens[0]) if gens else 0
    if rank(gens) < ncols:
        raise RankDeficient("generator columns are linearly dependent")
    return math.prod(smith_normal_form(gens).invariant_factors)


def saturation_basis(vectors: Sequence[IntVec], n: int) -> IntMatrix:
    """Basis (as columns of an n x r matrix) of span(vectors) intersected with Z^n."""
    if not vectors:
        return tuple(() for _ in range(n))
    G = transpose(vectors)  # n x m, columns are the vectors
    snf = smith_normal_form(G)
    r = len(snf.invariant_factors)
    Uinv = inverse(snf.U)
    return tuple(tuple(int(Uinv[i][j]) for j in range(r)) for i in range(n))


def enumerate_integer_box(lo, hi) -> Iterator[IntVec]:
    """Every integer point of the box ``lo <= p <= hi``, lexicographically."""
    ranges = [range(math.ceil(Fraction(a)), math.floor(Fraction(b)) + 1) for a, b in zip(lo, hi)]
    return itertools.product(*ranges)

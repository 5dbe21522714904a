"""Lattice point counting graded by the Gorenstein degree."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .cone import Cone
from .errors import InternalAssertion, NotComplete
from .polynomial import ONE, IntPolynomial

_ONE_MINUS_T = IntPolynomial([1, -1])


@dataclass(frozen=True)
class DeltaSeries:
    """The rational series ``numerator / (1 - t)^denominator_power``."""

    numerator: IntPolynomial
    denominator_power: int

    def coefficients(self, count: int) -> list[int]:
        """First ``count`` coefficients of the power series expansion."""
        out = []
        for j in range(count):
            m = self.denominator_power
            if m == 0:
                out.append(self.numerator[j])
            else:
                out.append(sum(self.numerator[i] * math.comb(j - i + m - 1, m - 1) for i in range(j + 1)))
        return out


@dataclass(frozen=True)
class BoxPoint:
    point: tuple
    degree: int
    alpha: tuple

    @property
    def is_interior(self) -> bool:
        return all(a > 0 for a in self.alpha)


class _Slicer:
    """Enumerates lattice points of a Gorenstein cone at a fixed degree.

    Works in a basis of the span lattice whose first coordinate is the
    degree, so level ``j`` is an exact (d-1)-dimensional box search.
    """

    def __init__(self, cone: Cone):
        self.cone = cone
        d = cone.dim
        K = cone.gorenstein.local
        snf = la.smith_normal_form((K,))
        V = [list(r) for r in snf.V]
        if la.dot(K, [V[i][0] for i in range(d)]) < 0:
            for row in V:
                row[0] = -row[0]
        Vinv = la.inverse(V)
        ys = [tuple(int(a) for a in la.matvec(Vinv, x)) for x in cone.local_rays]
        if d > 1:
            # change the last d-1 coordinates so the degree-1 slice has a small bounding box
            R = _reduce_widths([y[1:] for y in ys])
            Rinv = la.inverse(R)
            block = [[1] + [0] * (d - 1)] + [[0] + [int(x) for x in row] for row in Rinv]
            V = la.matmul(V, block)
            Vinv = la.inverse(V)
            ys = [tuple(int(a) for a in la.matvec(Vinv, x)) for x in cone.local_rays]
        self.V = la.as_matrix(V)
        assert all(y[0] == 1 for y in ys)
        self.lo = [min(y[i] for y in ys) for i in range(1, d)]
        self.hi = [max(y[i] for y in ys) for i in range(1, d)]
        self.facets = [la.matvec(la.transpose(self.V), f) for f in cone.local_facets]

    def points(self, j: int, strict: bool = False):
        """Ambient lattice points of degree ``j`` (relative interior only if ``strict``)."""
        cone = self.cone
        if cone.dim == 0:
            if j == 0:
                yield tuple(0 for _ in range(cone.ambient_dim))
            return
        if j == 0:
            if not strict or not cone.local_facets:
                yield tuple(0 for _ in range(cone.ambient_dim))
            return
        for z in la.enumerate_integer_box([j * a for a in self.lo], [j * b for b in self.hi]):
            y = (j,) + z
            ok = True
            for f in self.facets:
                v = la.dot(f, y)
                if v < 0 or (strict and v == 0):
                    ok = False
                    break
            if ok:
                yield cone.from_local(la.matvec(self.V, y))


def _width(row, pts) -> int:
    vals = [la.dot(row, p) for p in pts]
    return max(vals) - min(vals)


def _reduce_widths(pts):
    """Unimodular matrix whose rows are coordinate functionals of small width on ``pts``.

    Greedy pairwise reduction: replace row i by row i - q * row k whenever that
    shrinks its width. Widths are positive integers, so this terminates.
    """
    m = len(pts[0])
    rows = [list(r) for r in la.identity(m)]
    widths = [_width(r, pts) for r in rows]
    improved = True
    while improved:
        improved = False
        for i in range(m):
            for k in range(m):
                if i == k:
                    continue
                best_q, best_w = 0, widths[i]
                span = 2 * widths[i] // max(widths[k], 1) + 1
                for q in range(-span, span + 1):
                    if q:
                        w = _width([a - q * b for a, b in zip(rows[i], rows[k])], pts)
                        if w < best_w:
                            best_q, best_w = q, w
                if best_q:
                    rows[i] = [a - best_q * b for a, b in zip(rows[i], rows[k])]
                    widths[i] = best_w
                    improved = True
    return la.as_matrix(rows)


_slicers: dict[Cone, _Slicer] = {}
_deltas: dict[Cone, DeltaSeries] = {}
_lock = threading.Lock()


def _slicer(cone: Cone) -> _Slicer:
    s = _slicers.get(cone)
    if s is None:
        s = _Slicer(cone)
        with _lock:
            _slicers.setdefault(cone, s)
    return s


def cone_points(cone: Cone, j: int, strict: bool = False) -> list[tuple]:
    return list(_slicer(cone).points(j, strict))


def level_count(obj, j: int) -> int:
    """Number of lattice points of degree ``j`` in a Gorenstein cone or fan support."""
    if j < 0:
        return 0
    if isinstance(obj, Cone):
        return sum(1 for _ in _slicer(obj).points(j))
    obj.k_function
    seen = set()
    for i in obj.max_cone_ids:
        seen.update(_slicer(obj.cones[i]).points(j))
    return len(seen)


def relative_interior_count(cone: Cone, j: int) -> int:
    return sum(1 for _ in _slicer(cone).points(j, strict=True))


def _numerator(counts: list[int], m: int) -> IntPolynomial:
    return (_ONE_MINUS_T**m * IntPolynomial(counts)).truncate(m - 1 if m else 0)


def delta_of_cone(cone: Cone) -> DeltaSeries:
    """Ehrhart series of a Gorenstein cone graded by its level-one functional.

    Simplicial cones are also computed from the box points and the two
    results are required to agree.
    """
    cached = _deltas.get(cone)
    if cached is not None:
        return cached
    d = cone.dim
    cone.gorenstein
    if d == 0:
        result = DeltaSeries(ONE, 0)
    else:
        counts = [level_count(cone, j) for j in range(d)]
        result = DeltaSeries(_numerator(counts, d), d)
        if cone.is_simplicial and result.numerator != box_polynomial(cone):
            raise InternalAssertion(f"box polynomial of {cone!r} disagrees with lattice point counts")
    with _lock:
        _deltas.setdefault(cone, result)
    return result


def delta_of_complex(fan) -> DeltaSeries:
    """Ehrhart series of ``K^{-1}(1)`` for a complete Gorenstein fan."""
    from .fan import is_complete

    if not is_complete(fan):
        raise NotComplete("the fan is not complete")
    n = fan.ambient_dim
    counts = [level_count(fan, j) for j in range(n + 1)]
    return DeltaSeries((_ONE_MINUS_T**n * IntPolynomial(counts)).truncate(n), n)


def box_points(cone: Cone) -> list[BoxPoint]:
    """Graded box points of a simplicial Gorenstein cone, sorted by degree then point."""
    K = cone.gorenstein
    out = []
    for point, alpha in cone.box_points():
        degree = sum(alpha, Fraction(0))
        if degree != K(point):
            raise InternalAssertion(f"degree mismatch at box point {point} of {cone!r}")
        out.append(BoxPoint(point, int(degree), alpha))
    return sorted(out, key=lambda b: (b.degree, b.point))


def box_polynomial(cone: Cone) -> IntPolynomial:
    return _degree_polynomial(box_points(cone))


def interior_box_polynomial(cone: Cone) -> IntPolynomial:
    """Sum of ``t^K(v)`` over box points with all coordinates strictly positive."""
    return _degree_polynomial(b for b in box_points(cone) if b.is_interior)


def _degree_polynomial(points) -> IntPolynomial:
    coeffs: list[int] = []
    for b in points:
        while len(coeffs) <= b.degree:
            coeffs.append(0)
        coeffs[b.degree] += 1
    return IntPolynomial(coeffs)


def clear_caches():
    with _lock:
        _slicers.clear()
        _deltas.clear()

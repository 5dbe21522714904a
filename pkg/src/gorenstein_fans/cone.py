"""Pointed rational polyhedral cones."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import linalg as la
from .errors import NoRationalSolution, NonIntegral, NotPointed, NotSimplicial, ZeroVector
from .poset import GradedPoset


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int) -> list[tuple]:
    """Extreme rays of the pointed cone ``{x : c.x >= 0 for every c}``.

    Double description: start from a simplicial cone cut out by ``dim``
    independent constraints (lexicographically first), then add the remaining
    constraints one at a time. ``constraints`` must have rank ``dim``.
    """
    cons = sorted(set(tuple(c) for c in constraints))
    chosen: list[tuple] = []
    for c in cons:
        if la.rank(chosen + [c]) > len(chosen):
            chosen.append(c)
        if len(chosen) == dim:
            break
    if len(chosen) < dim:
        raise ValueError("constraints do not have full rank")
    inv = la.inverse(chosen)
    processed = list(chosen)
    rays = []
    for j in range(dim):
        r = la.primitive_rational([inv[i][j] for i in range(dim)])
        rays.append((r, frozenset(i for i in range(dim) if i != j)))
    rest = [c for c in cons if c not in chosen]
    for c in rest:
        k = len(processed)
        processed.append(c)
        vals = [la.dot(c, r) for r, _ in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            rays = [(r, t | {k}) if vals[i] == 0 else (r, t) for i, (r, t) in enumerate(rays)]
            continue
        new = []
        for i, (r, t) in enumerate(rays):
            if vals[i] > 0:
                new.append((r, t))
            elif vals[i] == 0:
                new.append((r, t | {k}))
        for i in pos:
            for j in neg:
                common = rays[i][1] & rays[j][1]
                if len(common) < dim - 2:
                    continue
                if la.rank([processed[m] for m in common]) != dim - 2:
                    continue
                p, q = rays[i][0], rays[j][0]
                vp, vq = vals[i], vals[j]
                comb = la.primitive_vector(tuple(vp * b - vq * a for a, b in zip(p, q)))
                new.append((comb, common | {k}))
        rays = new
    return sorted({r for r, _ in rays})


@dataclass(frozen=True)
class GorensteinForm:
    """Integral linear functional equal to 1 on every ray of a cone.

    ``covector`` lives in ambient coordinates and is the representative lying
    in the span of the cone; ``local`` gives the same functional on the span
    lattice basis and is always integral.
    """

    covector: tuple
    local: tuple

    def __call__(self, v) -> Fraction:
        return sum((Fraction(a) * b for a, b in zip(self.covector, v)), Fraction(0))

    @property
    def is_integral_vector(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.covector)


class Cone:
    """A pointed rational cone given by its primitive extreme rays.

    Construct through :func:`cone_from_generators`. Everything here is
    immutable; derived data is cached on first use.
    """

    def __init__(self, rays: tuple, ambient_dim: int, basis, local_rays, local_facets):
        self.rays = rays
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.dim = len(basis[0]) if basis and basis[0] else 0
        self.local_rays = local_rays
        self.local_facets = local_facets
        self._faces = None
        self._lattice = None

    @property
    def key(self) -> frozenset:
        return frozenset(self.rays)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.rays == other.rays and self.ambient_dim == other.ambient_dim

    def __hash__(self):
        return hash((self.rays, self.ambient_dim))

    def __repr__(self):
        return f"Cone({[list(r) for r in self.rays]})"

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @cached_property
    def _left_inverse(self):
        # dim independent rows of the basis with their integer adjugate and determinant
        rows: list[int] = []
        for i in range(self.ambient_dim):
            if la.rank([self.basis[j] for j in rows + [i]]) > len(rows):
                rows.append(i)
            if len(rows) == self.dim:
                break
        M = [self.basis[i] for i in rows]
        det = la.det(M)
        adj = tuple(tuple(int(x * det) for x in row) for row in la.inverse(M))
        return rows, adj, det

    def to_local(self, v):
        """Coordinates of ``v`` in the span lattice basis, or None if ``v`` is off the lattice span."""
        if self.dim == 0:
            return () if not any(v) else None
        rows, adj, det = self._left_inverse
        x = []
        for row in adj:
            num = sum(a * v[i] for a, i in zip(row, rows))
            if num % det:
                return None
            x.append(num // det)
        x = tuple(x)
        if la.matvec(self.basis, x) != tuple(v):
            return None
        return x

    def from_local(self, x):
        if self.dim == 0:
            return tuple(0 for _ in range(self.ambient_dim))
        return la.matvec(self.basis, x)

    def contains(self, v) -> bool:
        x = self.to_local(v)
        return x is not None and all(la.dot(f, x) >= 0 for f in self.local_facets)

    def in_relative_interior(self, v) -> bool:
        x = self.to_local(v)
        return x is not None and all(la.dot(f, x) > 0 for f in self.local_facets)

    @cached_property
    def facet_normals(self) -> list[tuple]:
        return facet_normals(self)

    def faces(self) -> dict[frozenset, "Cone"]:
        """All faces keyed by their ray sets, including the zero cone and the cone itself."""
        if self._faces is None:
            ray_idx = range(len(self.rays))
            zero_sets = [
                frozenset(i for i in ray_idx if la.dot(f, self.local_rays[i]) == 0) for f in self.local_facets
            ]
            found = {frozenset(ray_idx)}
            frontier = [frozenset(ray_idx)]
            while frontier:
                nxt = []
                for F in frontier:
                    for Z in zero_sets:
                        G = F & Z
                        if G not in found:
                            found.add(G)
                            nxt.append(G)
                frontier = nxt
            faces = {}
            for S in found:
                rays = tuple(self.rays[i] for i in sorted(S))
                faces[frozenset(rays)] = self if len(S) == len(self.rays) else _face_cone(rays, self.ambient_dim)
            self._faces = faces
        return self._faces

    @cached_property
    def gorenstein(self) -> GorensteinForm:
        return gorenstein_form(self)

    def box_points(self):
        """Lattice points of the half-open parallelepiped on the rays, with coordinates.

        Returns a list of ``(point, alpha)`` pairs where ``alpha`` are the
        (rational, in [0, 1)) coefficients on the rays in the order of
        ``self.rays``.
        """
        if not self.is_simplicial:
            raise NotSimplicial(f"{self!r} is not simplicial")
        G = la.transpose(self.local_rays)  # d x d, columns are rays
        out = []
        for point, alpha in parallelepiped_points(G):
            out.append((self.from_local(point), alpha))
        return out


@lru_cache(maxsize=None)
def _face_cone(rays: tuple, n: int) -> Cone:
    return cone_from_generators(rays, ambient_dim=n)


def cone_of_rays(rays, ambient_dim: int) -> Cone:
    """Shared cone instance for an already-primitive ray set."""
    return _face_cone(tuple(sorted(tuple(r) for r in rays)), ambient_dim)


def parallelepiped_points(G):
    """Integer points ``G alpha`` with ``alpha`` in ``[0,1)^d`` for square nonsingular ``G``.

    Coset representatives of ``Z^d / G Z^d`` come from the Smith form, then
    get reduced modulo the generators.
    """
    d = len(G)
    if d == 0:
        return [((), ())]
    snf = la.smith_normal_form(G)
    factors = [snf.S[i][i] for i in range(d)]
    Uinv = la.inverse(snf.U)
    Ginv = la.inverse(G)
    out = set()
    for k in la.enumerate_integer_box([0] * d, [s - 1 for s in factors]):
        y = la.matvec(Uinv, k)
        alpha = tuple(a - math.floor(a) for a in la.matvec(Ginv, y))
        point = tuple(int(x) for x in la.matvec(G, alpha))
        out.add((point, alpha))
    return sorted(out)


def cone_from_generators(gens: Iterable[Sequence[int]], ambient_dim: int | None = None) -> Cone:
    """Cone generated by ``gens``; redundant generators are dropped.

    Raises NotPointed if the generators span a cone containing a line.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient_dim is required for the zero cone")
        ambient_dim = len(gens[0])
    if any(len(g) != ambient_dim for g in gens):
        raise ValueError("generators have inconsistent lengths")
    if any(not any(g) for g in gens):
        raise ZeroVector("generators must be nonzero")
    prims = sorted({la.primitive_vector(g) for g in gens})
    if not prims:
        return Cone((), ambient_dim, tuple(() for _ in range(ambient_dim)), (), ())
    basis = la.saturation_basis(prims, ambient_dim)
    d = len(basis[0])
    probe = Cone(tuple(prims), ambient_dim, basis, (), ())
    local = [tuple(int(x) for x in probe.to_local(r)) for r in prims]
    facets = extreme_rays(local, d)
    if not facets or la.rank(facets) < d:
        raise NotPointed(f"generators {prims} span a cone containing a line")
    keep = []
    for r, x in zip(prims, local):
        tight = [f for f in facets if la.dot(f, x) == 0]
        if d == 1 or la.rank(tight) == d - 1:
            keep.append((r, x))
    rays = tuple(r for r, _ in keep)
    local_rays = tuple(x for _, x in keep)
    return Cone(rays, ambient_dim, basis, local_rays, tuple(facets))


def facet_normals(cone: Cone) -> list[tuple]:
    """Primitive integral inner facet normals as ambient covectors.

    For lower-dimensional cones each normal is the representative lying in
    the span of the cone, scaled to a primitive integer vector.
    """
    if cone.dim == 0:
        return []
    B = cone.basis
    out = []
    for f in cone.local_facets:
        # w in span(B) with w.B = f  ->  w = B y,  (B^T B) y = f
        Bt = la.transpose(B)
        gram = la.matmul(Bt, B)
        y = la.matvec(la.inverse(gram), f)
        out.append(la.primitive_rational(la.matvec(B, y)))
    return sorted(out)


def face_lattice(cone: Cone) -> GradedPoset:
    """Face poset keyed by ray sets (``frozenset`` of ray tuples), ranked by dimension."""
    if cone._lattice is None:
        faces = cone.faces()
        cone._lattice = GradedPoset({F: [G for G in faces if G < F] for F in faces})
    return cone._lattice


def gorenstein_form(cone: Cone) -> GorensteinForm:
    """The functional with value 1 on every ray, checked integral on the span lattice."""
    n = cone.ambient_dim
    if cone.dim == 0:
        return GorensteinForm(tuple(Fraction(0) for _ in range(n)), ())
    K = la.solve_rational(cone.rays, [Fraction(1)] * len(cone.rays))
    if K is None:
        raise NoRationalSolution(f"rays of {cone!r} admit no level-one linear functional")
    local = tuple(la.dot(K, [cone.basis[i][j] for i in range(n)]) for j in range(cone.dim))
    if any(Fraction(x).denominator != 1 for x in local):
        witness, value = _non_integral_witness(cone, K)
        raise NonIntegral(
            f"level-one functional of {cone!r} takes value {value} at lattice point {witness}",
            witness=witness,
            value=value,
        )
    return GorensteinForm(tuple(K), tuple(int(x) for x in local))


def _non_integral_witness(cone: Cone, K):
    # some box point of a simplicial subcone has fractional K-value
    chosen: list[int] = []
    for i, x in enumerate(cone.local_rays):
        if la.rank([cone.local_rays[j] for j in chosen + [i]]) > len(chosen):
            chosen.append(i)
    sub = cone_from_generators([cone.rays[i] for i in chosen], ambient_dim=cone.ambient_dim)
    best = None
    for point, _ in sub.box_points():
        value = la.dot(K, point)
        if Fraction(value).denominator != 1:
            cand = (value, point)
            if best is None or cand < best:
                best = cand
    return best[1], best[0]

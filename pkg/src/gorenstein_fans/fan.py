"""Fans: face-closed collections of cones meeting along common faces."""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from .cone import Cone, GorensteinForm, cone_of_rays, extreme_rays
from .errors import InvalidFan, NotComparable, NotGorenstein, UnknownCone
from .poset import GradedPoset

_PROBE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class Fan:
    """An immutable, validated fan in ``R^n``.

    Cones are numbered deterministically: by dimension, then by the sorted
    ray matrix. Id 0 is always the zero cone.
    """

    def __init__(self, ambient_dim: int, cones: Iterable[Cone]):
        self.ambient_dim = ambient_dim
        ordered = sorted(set(cones), key=lambda c: (c.dim, c.rays))
        self.cones: dict[int, Cone] = dict(enumerate(ordered))
        self.ids: dict[frozenset, int] = {c.key: i for i, c in self.cones.items()}
        self._k_function: dict[int, GorensteinForm] | None = None

    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones.values())

    def __eq__(self, other):
        return isinstance(other, Fan) and self.ambient_dim == other.ambient_dim and self.ray_sets() == other.ray_sets()

    def __hash__(self):
        return hash((self.ambient_dim, self.ray_sets()))

    def __repr__(self):
        return f"Fan(ambient_dim={self.ambient_dim}, f_vector={self.f_vector()})"

    def ray_sets(self) -> tuple:
        return tuple(c.rays for c in self.cones.values())

    def id_of(self, cone: Cone | Iterable) -> int:
        key = cone.key if isinstance(cone, Cone) else frozenset(tuple(r) for r in cone)
        try:
            return self.ids[key]
        except KeyError:
            raise UnknownCone(f"cone with rays {sorted(key)} is not in the fan") from None

    def cone(self, cid: int) -> Cone:
        try:
            return self.cones[cid]
        except KeyError:
            raise UnknownCone(f"no cone with id {cid}") from None

    @property
    def rays(self) -> list[tuple]:
        return [c.rays[0] for c in self.cones.values() if c.dim == 1]

    @cached_property
    def max_cone_ids(self) -> list[int]:
        below = self.poset.below
        covered = set().union(*below.values())
        return [i for i in self.cones if i not in covered]

    def f_vector(self) -> tuple[int, ...]:
        """Numbers of cones of dimensions 1, 2, ..., n."""
        counts = [0] * (self.ambient_dim + 1)
        for c in self.cones.values():
            counts[c.dim] += 1
        return tuple(counts[1:])

    @cached_property
    def poset(self) -> GradedPoset:
        """Face poset on cone ids."""
        return GradedPoset({i: [self.ids[F] for F in c.faces() if F != c.key] for i, c in self.cones.items()})

    @property
    def is_simplicial(self) -> bool:
        return all(c.is_simplicial for c in self.cones.values())

    @property
    def k_function(self) -> dict[int, GorensteinForm]:
        if self._k_function is None:
            gorenstein_fan_check(self)
        return self._k_function

    def K(self, v) -> int:
        """Value of the conewise linear degree function at a point of the support."""
        for i in self.max_cone_ids:
            if self.cones[i].contains(v):
                return self.k_function[i](v)
        raise ValueError(f"{v} is not in the support of the fan")

    def cones_containing(self, cid: int) -> list[int]:
        return [j for j in self.cones if self.poset.leq(cid, j)]


def fan_from_max_cones(ambient_dim: int, max_cone_ray_lists: Sequence[Sequence[Sequence[int]]], *, validate=True) -> Fan:
    """Build the face closure of the given cones, checking they meet in faces."""
    tops = [cone_of_rays(_canonical(rays, ambient_dim), ambient_dim) for rays in max_cone_ray_lists]
    return fan_from_cones(ambient_dim, tops, validate=validate)


def fan_from_cones(ambient_dim: int, tops: Sequence[Cone], *, validate=True) -> Fan:
    from .cone import cone_from_generators

    zero = cone_from_generators([], ambient_dim=ambient_dim)
    cones = {zero}
    for c in tops:
        cones.update(c.faces().values())
    fan = Fan(ambient_dim, cones)
    if validate:
        maxima = [fan.cones[i] for i in fan.max_cone_ids]
        for a, b in itertools.combinations(maxima, 2):
            check_meet(a, b)
    return fan


def _canonical(rays, n):
    from .cone import cone_from_generators

    return cone_from_generators(rays, ambient_dim=n).rays if rays else ()


def check_meet(a: Cone, b: Cone) -> frozenset:
    """Return the ray set of ``a & b``, raising InvalidFan unless it is a face of both."""
    meet = _meet(a, b)
    if meet not in a.faces() or meet not in b.faces():
        raise InvalidFan(f"cones {a!r} and {b!r} intersect in a non-face", pair=(a, b))
    return meet


def _meet(a: Cone, b: Cone) -> frozenset:
    if a.key == b.key:
        return a.key
    if a.dim == 0 or b.dim == 0:
        return frozenset()
    # a separating facet normal reduces the question to a pair of faces
    for x, y in ((a, b), (b, a)):
        for f in x.facet_normals:
            if all(la.dot(f, r) <= 0 for r in y.rays):
                fx = frozenset(r for r in x.rays if la.dot(f, r) == 0)
                fy = frozenset(r for r in y.rays if la.dot(f, r) == 0)
                if not fx or not fy:
                    return frozenset()
                return _meet(x.faces()[fx], y.faces()[fy])
    return _meet_exact(a, b)


def _meet_exact(a: Cone, b: Cone) -> frozenset:
    """Intersect two cones by converting the joint H-description back to rays."""
    n = a.ambient_dim
    equalities = la.nullspace(a.rays, n) + la.nullspace(b.rays, n)
    L = la.nullspace(equalities, n) if equalities else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if not L:
        return frozenset()
    Lcols = la.transpose(L)
    cons = [la.matvec(L, f) for f in a.facet_normals + b.facet_normals]
    cons = [c for c in cons if any(c)]
    k = len(L)
    if not cons or la.rank(cons) < k:
        raise InvalidFan(f"cones {a!r} and {b!r} intersect in a non-pointed set", pair=(a, b))
    meet = set()
    for z in extreme_rays(cons, k):
        v = la.primitive_vector(la.matvec(Lcols, z))
        if v not in a.rays or v not in b.rays:
            raise InvalidFan(f"cones {a!r} and {b!r} overlap beyond a common face", pair=(a, b))
        meet.add(v)
    return frozenset(meet)


def is_complete(fan: Fan) -> bool:
    """True iff the support is all of ``R^n``.

    Combines ridge pairing and connectivity of the maximal cones with exact
    point location of the probes ``(+-2, +-3, +-5, ...)``.
    """
    n = fan.ambient_dim
    if n == 0:
        return True
    maxima = fan.max_cone_ids
    if any(fan.cones[i].dim != n for i in maxima):
        return False
    ridges = [i for i, c in fan.cones.items() if c.dim == n - 1]
    adjacency = {i: set() for i in maxima}
    for r in ridges:
        above = [m for m in maxima if fan.poset.leq(r, m)]
        if len(above) != 2:
            return False
        adjacency[above[0]].add(above[1])
        adjacency[above[1]].add(above[0])
    seen, stack = {maxima[0]}, [maxima[0]]
    while stack:
        for j in adjacency[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(maxima):
        return False
    base = _PROBE_PRIMES[:n] if n <= len(_PROBE_PRIMES) else tuple(range(2, n + 2))
    for signs in itertools.product((1, -1), repeat=n):
        probe = tuple(s * q for s, q in zip(signs, base))
        if not any(fan.cones[i].contains(probe) for i in maxima):
            return False
    return True


def gorenstein_fan_check(fan: Fan) -> Fan:
    """Compute and store the level-one functional of every maximal cone."""
    forms = {}
    for i in fan.max_cone_ids:
        try:
            forms[i] = fan.cones[i].gorenstein
        except NotGorenstein as exc:
            exc.cone_id = i
            raise
    for i, j in itertools.combinations(fan.max_cone_ids, 2):
        shared = fan.cones[i].key & fan.cones[j].key
        if any(forms[i](r) != forms[j](r) for r in shared):
            from .errors import InternalAssertion

            raise InternalAssertion(f"level-one functionals of cones {i} and {j} disagree")
    fan._k_function = forms
    return fan


def star(fan: Fan, cid: int) -> GradedPoset:
    """Poset of cones containing ``cid``, ranked by dimension above it."""
    fan.cone(cid)
    return fan.poset.upper(cid)


def interval(fan: Fan, lo: int, hi: int) -> GradedPoset:
    fan.cone(lo)
    fan.cone(hi)
    if not fan.poset.leq(lo, hi):
        raise NotComparable(f"cone {lo} is not a face of cone {hi}")
    return fan.poset.interval(lo, hi)


def single_cone_fan(cone: Cone) -> Fan:
    """The fan of all faces of one cone."""
    return fan_from_cones(cone.ambient_dim, [cone], validate=False)

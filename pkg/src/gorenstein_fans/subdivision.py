"""Crepant simplicial subdivisions.

Every new ray is a lattice point of degree 1, so the degree function is
unchanged. Triangulations are pulling triangulations of the degree-1
cross-sections driven by one global order on their lattice points, which
makes the triangulations of shared faces agree.
"""

from __future__ import annotations

import random
from typing import Optional

from . import linalg as la
from .cone import Cone
from .ehrhart import cone_points
from .errors import NotSimplicial
from .fan import Fan, fan_from_max_cones

ORDERS = ("deep", "lex", "revlex", "random")


def level_one_points(fan: Fan) -> list[tuple]:
    fan.k_function
    pts = set()
    for i in fan.max_cone_ids:
        pts.update(cone_points(fan.cones[i], 1))
    return sorted(pts)


def carrier(fan: Fan, v) -> int:
    """Id of the smallest cone containing ``v``."""
    for i in sorted(fan.cones, key=lambda i: fan.cones[i].dim):
        if fan.cones[i].contains(v):
            return i
    raise ValueError(f"{v} is not in the support of the fan")


def point_order(fan: Fan, order: str = "deep", seed: Optional[int] = None) -> dict[tuple, int]:
    """Rank of every degree-1 lattice point under the named order.

    ``deep`` puts points whose carrier cone is non-simplicial first, deeper
    carriers earlier, then everything else lexicographically; non-simplicial
    faces get pulled at interior points while simplices stay whole (the
    lexicographic minimum of a simplex is a vertex). ``lex``/``revlex`` are
    plain lexicographic orders; ``random`` is a seeded shuffle.
    """
    pts = level_one_points(fan)
    if order == "deep":

        def key(v):
            c = fan.cones[carrier(fan, v)]
            return (True, 0, v) if c.is_simplicial else (False, -c.dim, v)

        keyed = sorted(pts, key=key)
    elif order == "lex":
        keyed = pts
    elif order == "revlex":
        keyed = sorted(pts, reverse=True)
    elif order == "random":
        keyed = list(pts)
        random.Random(seed).shuffle(keyed)
    else:
        raise ValueError(f"unknown point order {order!r}; expected one of {ORDERS}")
    return {v: k for k, v in enumerate(keyed)}


def pulling_triangulation(cone: Cone, rank: dict[tuple, int], memo: dict | None = None) -> list[tuple]:
    """Simplicial cones (as ray tuples) of the pulling triangulation of ``cone``.

    The first point of the cross-section in ``rank`` is coned over the
    triangulations of the facets that miss it.
    """
    memo = {} if memo is None else memo
    if cone in memo:
        return memo[cone]
    if cone.dim <= 1:
        out = [cone.rays]
    else:
        p = min((v for v in cone_points(cone, 1)), key=rank.__getitem__)
        out = []
        for key, face in cone.faces().items():
            if face.dim != cone.dim - 1 or face.contains(p):
                continue
            for simplex in pulling_triangulation(face, rank, memo):
                out.append(tuple(sorted(set(simplex) | {p})))
    memo[cone] = out
    return out


def crepant_subdivide(fan: Fan, order: str = "deep", seed: Optional[int] = None) -> Fan:
    """Simplicial refinement with the same degree function and all rays at degree 1."""
    rank = point_order(fan, order, seed)
    memo: dict = {}
    simplices = set()
    for i in fan.max_cone_ids:
        simplices.update(pulling_triangulation(fan.cones[i], rank, memo))
    return fan_from_max_cones(fan.ambient_dim, sorted(simplices))


def stellar_subdivide(fan: Fan, v) -> Fan:
    """Star subdivision of a simplicial fan at the lattice point ``v``."""
    if not fan.is_simplicial:
        raise NotSimplicial("stellar subdivision is implemented for simplicial fans")
    v = la.primitive_vector(v)
    tau = fan.cones[carrier(fan, v)]
    if tau.dim == 1:
        return fan
    new = []
    for i in fan.max_cone_ids:
        sigma = fan.cones[i]
        if not tau.key <= sigma.key:
            new.append(sigma.rays)
            continue
        for r in tau.rays:
            new.append(tuple(sorted((sigma.key - {r}) | {v})))
    return fan_from_max_cones(fan.ambient_dim, new)


def random_crepant_refinement(fan: Fan, rng: random.Random, stellar_steps: int = 2) -> Fan:
    """Pull with a random order, then star-subdivide at random degree-1 points."""
    out = crepant_subdivide(fan, order="random", seed=rng.randrange(2**32))
    for _ in range(stellar_steps):
        rays = set(out.rays)
        candidates = [v for v in level_one_points(out) if v not in rays]
        if not candidates:
            break
        out = stellar_subdivide(out, rng.choice(candidates))
    return out

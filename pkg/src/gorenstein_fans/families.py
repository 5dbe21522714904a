"""Built-in fans and seeded random generators."""

from __future__ import annotations

import itertools
import random

from . import linalg as la
from .cone import Cone, cone_from_generators
from .fan import Fan, fan_from_max_cones
from .subdivision import random_crepant_refinement

FAMILIES = ("cube-fan", "cross-fan", "projective", "random")


def cube_fan(d: int) -> Fan:
    """Face fan of ``[-1, 1]^d``: cones over the facets of the cube."""
    faces = []
    for axis in range(d):
        for sign in (1, -1):
            faces.append([v for v in itertools.product((1, -1), repeat=d) if v[axis] == sign])
    return fan_from_max_cones(d, faces)


def cross_polytope_fan(d: int) -> Fan:
    """Face fan of the cross-polytope (the normal fan of the cube); smooth."""
    cones = []
    for signs in itertools.product((1, -1), repeat=d):
        cones.append([tuple(s if j == i else 0 for j in range(d)) for i, s in enumerate(signs)])
    return fan_from_max_cones(d, cones)


def projective_space_fan(d: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)] + [tuple(-1 for _ in range(d))]
    return fan_from_max_cones(d, [r for r in itertools.combinations(rays, d)])


def cube_cone(d: int) -> Cone:
    """Cone over ``[-1, 1]^d`` placed at height 1 in ``R^(d+1)``."""
    return cone_from_generators([v + (1,) for v in itertools.product((-1, 1), repeat=d)])


def random_unimodular(n: int, rng: random.Random, steps: int = 6):
    M = [list(r) for r in la.identity(n)]
    if n < 2:
        return la.as_matrix(M)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.choice((-1, 1))
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
    return la.as_matrix(M)


def random_simplicial_gorenstein_cone(rng: random.Random, max_dim: int = 4, max_index: int = 50, extra_ambient: int = 1) -> Cone:
    """Simplicial Gorenstein cone built at height 1 and sheared by a unimodular map.

    Generators are ``(a_i, 1)`` with small integer ``a_i``; a random
    unimodular matrix moves the cone (and possibly embeds it in a larger
    ambient lattice), which preserves the lattice index and the Gorenstein
    property.
    """
    d = rng.randint(1, max_dim)
    while True:
        cols = [tuple(rng.randint(-2, 2) for _ in range(d - 1)) + (1,) for _ in range(d)]
        idx = abs(la.det(cols))
        if 0 < idx <= max_index:
            break
    n = d + rng.randint(0, extra_ambient)
    U = random_unimodular(n, rng)
    gens = [la.matvec(U, c + (0,) * (n - d)) for c in cols]
    return cone_from_generators(gens)


def random_simplicial_fan(seed: int, max_dim: int = 3) -> Fan:
    """Random crepant refinement of a cube face fan; simplicial and Gorenstein."""
    rng = random.Random(seed)
    d = rng.randint(2, max(2, max_dim))
    return random_crepant_refinement(cube_fan(d), rng, stellar_steps=rng.randint(0, 3))


def generate(family: str, dim: int = 3, seed: int = 0) -> Fan:
    if family == "cube-fan":
        return cube_fan(dim)
    if family == "cross-fan":
        return cross_polytope_fan(dim)
    if family == "projective":
        return projective_space_fan(dim)
    if family == "random":
        return random_simplicial_fan(seed, max_dim=dim)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")

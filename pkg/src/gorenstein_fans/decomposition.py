"""Local polynomials ``c_sigma``, star polynomials ``h_V`` and the decomposition checks.

For every cone ``sigma`` the local polynomial is defined by the triangular
inversion

    delta_sigma(t) = sum over faces tau of sigma of c_tau(t) * g([tau, sigma], t)

so that ``c`` of the zero cone is 1. For simplicial cones ``c`` is the
interior box polynomial. On a complete Gorenstein fan the global identity

    delta_C(t) = sum over cones sigma of c_sigma(t) * h_V(sigma)(t)

holds with ``h_V(sigma) = sum over pi >= sigma of g([sigma, pi]) (t-1)^(n - dim pi)``.

Both sums are taken over plain intervals by default. ``orientation="opposite"``
uses the order-reversed intervals in both places instead; the global identity
still holds (it regroups to the same sum of local delta-polynomials), but the
resulting ``c`` and ``h_V`` are no longer the local and intersection
cohomology polynomials once intervals stop being self-dual (dimension 4).
"""

from __future__ import annotations

import hashlib
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

from .cone import Cone, face_lattice
from .ehrhart import delta_of_complex, delta_of_cone, interior_box_polynomial
from .errors import InternalAssertion, NotComplete
from .fan import Fan, is_complete, single_cone_fan
from .polynomial import ONE, T_MINUS_ONE, IntPolynomial
from .poset import g_poly, lower_g, opposite

ORIENTATIONS = ("plain", "opposite")

_c_cache: dict[tuple, IntPolynomial] = {}
_c_lock = threading.Lock()


def interval_g(cone: Cone, face: frozenset, orientation: str = "plain") -> IntPolynomial:
    """g of the face interval ``[face, cone]``, or of its opposite."""
    _check_orientation(orientation)
    L = face_lattice(cone)
    I = L.interval(face, cone.key)
    return g_poly(opposite(I) if orientation == "opposite" else I, check=False)


def _check_orientation(orientation: str):
    if orientation not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {orientation!r}; expected one of {ORIENTATIONS}")


def _upper_g(cone: Cone, orientation: str = "plain") -> dict:
    """``g([F, cone])`` for every face ``F``; repeated interval types hit the poset cache."""
    L = face_lattice(cone)
    out = {}
    for F in L.elements:
        # [F, cone] is the face lattice of the quotient cone; boolean iff that is simplicial
        atoms = sum(1 for G in L.elements if F in L.covers_below[G])
        if atoms == cone.dim - L.rank[F]:
            out[F] = ONE
        else:
            I = L.interval(F, cone.key)
            out[F] = g_poly(opposite(I) if orientation == "opposite" else I, check=False)
    return out


def local_c(cone: Cone, orientation: str = "plain") -> IntPolynomial:
    """The local polynomial of one Gorenstein cone (depends on the cone alone)."""
    cached = _c_cache.get((cone, orientation))
    if cached is not None:
        return cached
    _check_orientation(orientation)
    c = delta_of_cone(cone).numerator
    if cone.dim > 0:
        g = _upper_g(cone, orientation)
        for F, face in cone.faces().items():
            if face is not cone:
                c = c - local_c(face, orientation) * g[F]
    if cone.is_simplicial:
        box = interior_box_polynomial(cone)
        if box != c:
            raise InternalAssertion(f"local polynomial {c} of {cone!r} differs from interior box polynomial {box}")
    with _c_lock:
        _c_cache.setdefault((cone, orientation), c)
    return c


def c_polynomials(fan: Fan, orientation: str = "plain") -> dict[int, IntPolynomial]:
    """Local polynomial of every cone, keyed by cone id."""
    fan.k_function
    return {i: local_c(fan.cones[i], orientation) for i in sorted(fan.cones, key=lambda i: fan.cones[i].dim)}


def h_V(fan: Fan, cid: int, *, check_complete: bool = True, orientation: str = "plain") -> IntPolynomial:
    """Star polynomial ``sum_{pi >= sigma} g([sigma, pi]) (t - 1)^(n - dim pi)``."""
    _check_orientation(orientation)
    fan.cone(cid)
    if check_complete and not is_complete(fan):
        raise NotComplete("h_V is defined here for complete fans only")
    up = fan.poset.upper(cid)
    n = fan.ambient_dim
    if orientation == "plain":
        g = lower_g(up)
    else:
        g = {p: g_poly(opposite(up.interval(cid, p)), check=False) for p in up.elements}
    total = IntPolynomial()
    for p in up.elements:
        total = total + g[p] * T_MINUS_ONE ** (n - fan.cones[p].dim)
    return total


# --------------------------------------------------------------------------
# Reports


@dataclass
class ConeRecord:
    id: int
    dim: int
    rays: list
    delta: IntPolynomial
    c: IntPolynomial
    h: IntPolynomial

    @property
    def c_palindromic(self) -> bool:
        # interior box symmetry c_i = c_{dim - i} for dim >= 1
        return self.dim == 0 or self.c.is_palindromic(self.dim)


@dataclass
class DecompositionReport:
    kind: str  # "fan" or "polytope"
    ambient_dim: int
    fan_hash: str
    delta: IntPolynomial
    denominator_power: int
    records: list[ConeRecord]
    lhs: IntPolynomial
    rhs: IntPolynomial
    timing: dict = field(default_factory=dict, compare=False)

    @property
    def identity_holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def negative_witnesses(self) -> list[int]:
        return [r.id for r in self.records if not r.c.is_nonnegative()]

    @property
    def nonnegative(self) -> bool:
        return not self.negative_witnesses

    @property
    def verified(self) -> bool:
        return self.identity_holds and self.nonnegative

    def record(self, cid: int) -> ConeRecord:
        return next(r for r in self.records if r.id == cid)

    def recompute_rhs(self) -> IntPolynomial:
        """Right-hand side recomputed from the stored per-cone polynomials."""
        return sum((r.c * r.h for r in self.records), IntPolynomial())

    def c_by_id(self) -> dict[int, IntPolynomial]:
        return {r.id: r.c for r in self.records}


def fan_hash(fan: Fan) -> str:
    text = repr((fan.ambient_dim, [[list(r) for r in c.rays] for c in fan]))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def verify_identity(fan: Fan, orientation: str = "plain") -> DecompositionReport:
    """Both sides of the global decomposition identity plus nonnegativity of every ``c``."""
    start = time.perf_counter()
    delta = delta_of_complex(fan)
    t_delta = time.perf_counter()
    cs = c_polynomials(fan, orientation)
    t_c = time.perf_counter()
    records = []
    for i, cone in fan.cones.items():
        records.append(
            ConeRecord(i, cone.dim, [list(r) for r in cone.rays], delta_of_cone(cone).numerator, cs[i], h_V(fan, i, check_complete=False, orientation=orientation))
        )
    rhs = sum((r.c * r.h for r in records), IntPolynomial())
    end = time.perf_counter()
    return DecompositionReport(
        "fan",
        fan.ambient_dim,
        fan_hash(fan),
        delta.numerator,
        delta.denominator_power,
        records,
        delta.numerator,
        rhs,
        {"delta": t_delta - start, "c": t_c - t_delta, "h": end - t_c},
    )


def verify_polytope_formula(cone: Cone, orientation: str = "plain") -> DecompositionReport:
    """Single-cone version: ``delta_P = sum_F c_F g_{F*}``.

    ``g_{F*}`` is evaluated on the interval ``[F, P]`` of the face lattice of
    the cone over ``P``. The per-face ``h`` field stores that factor.
    """
    start = time.perf_counter()
    delta = delta_of_cone(cone)
    fan = single_cone_fan(cone)
    g = _upper_g(cone, orientation)
    records = []
    for i, face in fan.cones.items():
        records.append(
            ConeRecord(i, face.dim, [list(r) for r in face.rays], delta_of_cone(face).numerator, local_c(face, orientation), g[face.key])
        )
    rhs = sum((r.c * r.h for r in records), IntPolynomial())
    return DecompositionReport(
        "polytope",
        cone.ambient_dim,
        fan_hash(fan),
        delta.numerator,
        delta.denominator_power,
        records,
        delta.numerator,
        rhs,
        {"total": time.perf_counter() - start},
    )


def polytope_resummation(cone: Cone, orientation: str = "plain", c_orientation: str = "plain") -> IntPolynomial:
    """``sum_F c_F * g(I_F)`` where ``I_F`` is ``[F, P]`` or its opposite.

    ``c_F`` is the local polynomial computed with ``c_orientation``.
    """
    total = IntPolynomial()
    for F, face in cone.faces().items():
        total = total + local_c(face, c_orientation) * interval_g(cone, F, orientation)
    return total


@dataclass
class SubdivisionReport:
    original: DecompositionReport
    refined: list[tuple[str, Fan, DecompositionReport]]

    @property
    def delta_invariant(self) -> bool:
        return all(rep.delta == self.original.delta for _, _, rep in self.refined)

    @property
    def verified(self) -> bool:
        return self.delta_invariant and self.original.verified and all(rep.verified for _, _, rep in self.refined)


def verify_subdivision_invariance(fan: Fan, orders=("deep", "lex"), seed: Optional[int] = None) -> SubdivisionReport:
    """delta and the identity on the fan and on crepant subdivisions built with each point order."""
    from .subdivision import crepant_subdivide

    original = verify_identity(fan)
    refined = []
    for order in orders:
        sub = crepant_subdivide(fan, order=order, seed=seed)
        refined.append((order, sub, verify_identity(sub)))
    return SubdivisionReport(original, refined)


def clear_caches():
    with _c_lock:
        _c_cache.clear()

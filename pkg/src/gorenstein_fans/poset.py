"""Finite graded posets and Stanley's toric g- and h-polynomials."""

from __future__ import annotations

import hashlib
import threading
from typing import Hashable, Iterable, Mapping

import networkx as nx

from .errors import NotEulerian, NotGraded
from .polynomial import ONE, T_MINUS_ONE, IntPolynomial


class GradedPoset:
    """A graded poset with a unique bottom element.

    ``below`` maps each element to the set of elements strictly below it
    (the full order relation, not just covers). Ranks are recomputed from the
    bottom element so that ``rank(bottom) == 0``. ``top`` is None when there
    is no unique maximal element (stars of cones in a complete fan).
    """

    def __init__(self, below: Mapping[Hashable, Iterable[Hashable]]):
        self.below = {x: frozenset(ys) for x, ys in below.items()}
        self.elements = tuple(sorted(self.below, key=_sort_key))
        bottoms = [x for x in self.elements if not self.below[x]]
        tops = [x for x in self.elements if len(self.below[x]) == len(self.elements) - 1]
        if len(bottoms) != 1:
            raise NotGraded("poset must have a unique bottom element")
        self.bottom = bottoms[0]
        self.top = tops[0] if len(tops) == 1 else None
        self.covers_below = {
            x: frozenset(y for y in ys if not any(y in self.below[z] for z in ys)) for x, ys in self.below.items()
        }
        self.rank = {}
        for x in sorted(self.elements, key=lambda e: len(self.below[e])):
            cov = self.covers_below[x]
            ranks = {self.rank[y] for y in cov}
            if len(ranks) > 1:
                raise NotGraded(f"element {x!r} covers elements of different ranks")
            self.rank[x] = (ranks.pop() + 1) if ranks else 0
        self._certificate = None

    def __len__(self):
        return len(self.elements)

    @property
    def height(self) -> int:
        """Largest rank."""
        return max(self.rank.values())

    @property
    def is_bounded(self) -> bool:
        return self.top is not None

    def leq(self, x, y) -> bool:
        return x == y or x in self.below[y]

    def interval(self, x, y) -> "GradedPoset":
        """The closed interval ``[x, y]``."""
        if not self.leq(x, y):
            from .errors import NotComparable

            raise NotComparable(f"{x!r} is not below {y!r}")
        members = {z for z in self.below[y] | {y} if self.leq(x, z)}
        return GradedPoset({z: self.below[z] & members for z in members})

    def upper(self, x) -> "GradedPoset":
        """All elements above ``x`` (inclusive)."""
        members = {z for z in self.elements if self.leq(x, z)}
        return GradedPoset({z: self.below[z] & members for z in members})

    def is_graded(self) -> bool:
        """All maximal chains of every lower interval have equal length."""
        return all(self.rank[x] == self.rank[y] + 1 for x, cov in self.covers_below.items() for y in cov)

    def hasse_graph(self) -> nx.DiGraph:
        G = nx.DiGraph()
        for x in self.elements:
            G.add_node(x, rank=self.rank[x])
        for x, cov in self.covers_below.items():
            for y in cov:
                G.add_edge(y, x)
        return G

    def certificate(self) -> str:
        """Isomorphism invariant from colour refinement over the Hasse diagram.

        Isomorphic posets always share a certificate; the cache confirms a
        match with an exact isomorphism test.
        """
        if self._certificate is None:
            covers_above = {x: [] for x in self.elements}
            for x, cov in self.covers_below.items():
                for y in cov:
                    covers_above[y].append(x)
            colour = {x: str(self.rank[x]) for x in self.elements}
            for _ in range(self.height + 2):
                new = {}
                for x in self.elements:
                    sig = (
                        colour[x],
                        tuple(sorted(colour[y] for y in self.covers_below[x])),
                        tuple(sorted(colour[y] for y in covers_above[x])),
                    )
                    new[x] = hashlib.sha1(repr(sig).encode()).hexdigest()[:16]
                if len(set(new.values())) == len(set(colour.values())):
                    colour = new
                    break
                colour = new
            summary = repr((len(self), self.height, sorted(colour.values())))
            self._certificate = hashlib.sha1(summary.encode()).hexdigest()
        return self._certificate

    def __repr__(self):
        return f"GradedPoset(size={len(self)}, height={self.height})"


def _sort_key(x):
    return (type(x).__name__, x) if isinstance(x, (int, str, tuple)) else (type(x).__name__, repr(x))


def opposite(p: GradedPoset) -> GradedPoset:
    """Order-reversed poset."""
    above = {x: set() for x in p.elements}
    for x, ys in p.below.items():
        for y in ys:
            above[y].add(x)
    return GradedPoset(above)


def boolean_lattice(n: int) -> GradedPoset:
    subsets = [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
    return GradedPoset({s: [u for u in subsets if u < s] for s in subsets})


def chain(n: int) -> GradedPoset:
    """Chain with ``n`` elements, ``0 < 1 < ... < n-1``."""
    return GradedPoset({i: range(i) for i in range(n)})


def is_eulerian(p: GradedPoset) -> bool:
    """Every interval of positive length has as many even- as odd-rank elements."""
    for y in p.elements:
        for x in p.below[y]:
            balance = 0
            for z in p.below[y] | {y}:
                if p.leq(x, z):
                    balance += 1 if p.rank[z] % 2 == 0 else -1
            if balance != 0:
                return False
    return True


def g_from_h(h: IntPolynomial, height: int) -> IntPolynomial:
    """Truncated first difference: ``g_i = h_i - h_{i-1}`` for ``i <= (height-1)//2``."""
    if height <= 0:
        return ONE
    return IntPolynomial([h[0]] + [h[i] - h[i - 1] for i in range(1, (height - 1) // 2 + 1)])


def lower_g(p: GradedPoset) -> dict:
    """Map every element ``x`` to ``g([bottom, x])`` by one pass up the ranks.

    The caller must ensure Eulerianness; no check is done here because this
    routine is the hot loop of every fan computation.
    """
    g = {}
    powers = [ONE]
    for x in sorted(p.elements, key=p.rank.__getitem__):
        rx = p.rank[x]
        if rx == 0:
            g[x] = ONE
            continue
        h = _h_from_lower(p, x, rx, g, powers)
        g[x] = g_from_h(h, rx)
    return g


def _h_from_lower(p, x, rx, g, powers):
    while len(powers) < rx + 1:
        powers.append(powers[-1] * T_MINUS_ONE)
    total = IntPolynomial()
    for y in p.below[x]:
        total = total + g[y] * powers[rx - p.rank[y] - 1]
    return total


class _PolynomialCache:
    """Shared (h, g) memo keyed by poset isomorphism class."""

    def __init__(self):
        self._buckets: dict[str, list] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def lookup(self, p: GradedPoset):
        bucket = self._buckets.get(p.certificate(), [])
        if bucket:
            G = p.hasse_graph()
            for H, value in bucket:
                if nx.is_isomorphic(G, H, node_match=lambda a, b: a["rank"] == b["rank"]):
                    self.hits += 1
                    return value
        self.misses += 1
        return None

    def insert(self, p: GradedPoset, value):
        with self._lock:
            self._buckets.setdefault(p.certificate(), []).append((p.hasse_graph(), value))

    def clear(self):
        with self._lock:
            self._buckets.clear()
            self.hits = self.misses = 0


CACHE = _PolynomialCache()


def _toric_hg(p: GradedPoset, *, check: bool = True):
    if not p.is_bounded:
        raise NotGraded(f"{p!r} has no unique top element")
    if check and not is_eulerian(p):
        raise NotEulerian(f"{p!r} is not Eulerian")
    cached = CACHE.lookup(p)
    if cached is not None:
        return cached
    r = p.height
    if r == 0:
        value = (ONE, ONE)
    else:
        g = lower_g(p)
        powers = [ONE]
        h = _h_from_lower(p, p.top, r, g, powers)
        value = (h, g_from_h(h, r))
    CACHE.insert(p, value)
    return value


def h_poly(p: GradedPoset, *, check: bool = True) -> IntPolynomial:
    """Toric h-polynomial ``sum_{x < top} g([bottom, x]) (t-1)^(r - rank x - 1)``."""
    return _toric_hg(p, check=check)[0]


def g_poly(p: GradedPoset, *, check: bool = True) -> IntPolynomial:
    """Toric g-polynomial; equals 1 on rank-0 posets and on boolean lattices."""
    return _toric_hg(p, check=check)[1]

"""Automorphism groups, orbit partitions, symmetrization, vertex transitivity.

The search is a distance-profile-refined backtracking: a vertex may only map
to vertices with the same sorted distance row, and every partial assignment
must preserve pairwise distances.  The full group is materialized only for
modest orders; orbit partitions and group orders use find-first searches and
a stabilizer chain instead, which handles e.g. the Hoffman-Singleton graph
(order 252000) without listing every element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .doubling import Measure
from .errors import SizeCapError, ValidationError
from .graphs import DistanceTable, Graph, distances

AUT_VERTEX_CAP = 256
DEFAULT_GROUP_LIMIT = 100_000


class _AutSearch:
    """Backtracking over distance-preserving vertex bijections."""

    def __init__(self, g: Graph, dt: DistanceTable | None = None):
        self.g = g
        self.n = g.n
        self.dist = (dt or distances(g)).dist
        profiles = [tuple(sorted(self.dist[v].tolist())) for v in range(self.n)]
        classes: dict[tuple, list[int]] = {}
        for v, p in enumerate(profiles):
            classes.setdefault(p, []).append(v)
        self.profile = profiles
        self.classes = classes
        # deterministic order: grow a connected prefix, rarest class first
        first = min(range(self.n), key=lambda v: (len(classes[profiles[v]]), v))
        order = [first]
        seen = {first}
        while len(order) < self.n:
            frontier = [
                v
                for v in range(self.n)
                if v not in seen and any(u in seen for u in g.adj[v])
            ]
            nxt = min(frontier, key=lambda v: (len(classes[profiles[v]]), v))
            order.append(nxt)
            seen.add(nxt)
        self.order = order

    def _consistent(self, v: int, w: int, mapping: dict[int, int]) -> bool:
        if self.profile[v] != self.profile[w]:
            return False
        dv, dw = self.dist[v], self.dist[w]
        return all(dv[u] == dw[x] for u, x in mapping.items())

    def search(self, prefix: dict[int, int], on_complete) -> None:
        """Backtrack over automorphisms extending prefix.

        ``on_complete(perm)`` is called per completed permutation; returning
        True stops the search.
        """
        todo = [v for v in self.order if v not in prefix]
        mapping = dict(prefix)
        used = set(mapping.values())
        if len(used) != len(mapping):
            raise ValidationError("prefix is not injective")

        def backtrack(i: int) -> bool:
            if i == len(todo):
                return on_complete(tuple(mapping[v] for v in range(self.n)))
            v = todo[i]
            for w in self.classes[self.profile[v]]:
                if w in used or not self._consistent(v, w, mapping):
                    continue
                mapping[v] = w
                used.add(w)
                if backtrack(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
            return False

        backtrack(0)

    def find_extension(self, prefix: dict[int, int]) -> tuple[int, ...] | None:
        """First automorphism extending the prefix map, or None."""
        found: list[tuple[int, ...]] = []

        def stop_first(perm: tuple[int, ...]) -> bool:
            found.append(perm)
            return True

        self.search(prefix, stop_first)
        return found[0] if found else None


def _check_size(g: Graph) -> None:
    if g.n > AUT_VERTEX_CAP:
        raise SizeCapError(f"automorphism search capped at {AUT_VERTEX_CAP} vertices")


def automorphisms(g: Graph, limit: int = DEFAULT_GROUP_LIMIT) -> list[tuple[int, ...]]:
    """The complete automorphism group as explicit permutation tuples.

    Deterministic order; the identity is always present.  Raises SizeCapError
    when the group would exceed ``limit`` elements (use orbit_partition for
    such graphs, it never materializes the group).
    """
    _check_size(g)
    search = _AutSearch(g)
    perms: list[tuple[int, ...]] = []

    def gather(perm: tuple[int, ...]) -> bool:
        perms.append(perm)
        if len(perms) > limit:
            raise SizeCapError(f"automorphism group exceeds listing limit {limit}")
        return False

    search.search({}, gather)
    perms.sort()
    return perms


@dataclass(frozen=True)
class OrbitPartition:
    orbit_of: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    group_order: int


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _partition_from_uf(n: int, uf: _UnionFind, group_order: int) -> OrbitPartition:
    roots: dict[int, int] = {}
    orbit_of = []
    members: list[list[int]] = []
    for v in range(n):
        r = uf.find(v)
        if r not in roots:
            roots[r] = len(members)
            members.append([])
        orbit_of.append(roots[r])
        members[roots[r]].append(v)
    return OrbitPartition(
        tuple(orbit_of), tuple(tuple(m) for m in members), group_order
    )


def orbit_partition(g: Graph, auts: list[tuple[int, ...]] | None = None) -> OrbitPartition:
    """Vertex orbits under Aut(G) plus the exact group order.

    When ``auts`` is omitted the orbits come from find-first searches and the
    order from a stabilizer chain, so large groups need not be enumerated.
    """
    _check_size(g)
    if auts is not None:
        uf = _UnionFind(g.n)
        for perm in auts:
            for v, w in enumerate(perm):
                uf.union(v, w)
        return _partition_from_uf(g.n, uf, len(auts))

    search = _AutSearch(g)
    uf = _UnionFind(g.n)
    for v in range(g.n):
        for w in search.classes[search.profile[v]]:
            if w <= v or uf.find(v) == uf.find(w):
                continue
            perm = search.find_extension({v: w})
            if perm is not None:
                for a, b in enumerate(perm):
                    uf.union(a, b)
    order = _group_order(search)
    return _partition_from_uf(g.n, uf, order)


def _group_order(search: _AutSearch) -> int:
    """|Aut(G)| as the product of orbit sizes along a stabilizer chain."""
    order = 1
    prefix: dict[int, int] = {}
    for v in search.order:
        count = 0
        for w in search.classes[search.profile[v]]:
            if w in prefix.values() or not search._consistent(v, w, prefix):
                continue
            if w == v or search.find_extension({**prefix, v: w}) is not None:
                count += 1
        order *= count
        prefix[v] = v
    return order


def symmetrize(mu: Measure, auts: list[tuple[int, ...]]) -> Measure:
    """mu_F(v) = sum over sigma in F of mu(sigma(v)); F-invariant by construction."""
    if not auts:
        raise ValidationError("need a non-empty set of automorphisms")
    n = len(mu)
    weights = []
    for v in range(n):
        weights.append(sum(mu[perm[v]] for perm in auts))
    return Measure(tuple(weights))


def is_vertex_transitive(g: Graph) -> bool:
    """True iff Aut(G) has a single vertex orbit."""
    _check_size(g)
    search = _AutSearch(g)
    if len(search.classes) > 1:
        return False
    uf = _UnionFind(g.n)
    for w in range(1, g.n):
        if uf.find(0) == uf.find(w):
            continue
        perm = search.find_extension({0: w})
        if perm is None:
            return False
        for a, b in enumerate(perm):
            uf.union(a, b)
    return all(uf.find(v) == uf.find(0) for v in range(g.n))

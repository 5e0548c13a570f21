"""Visibility predicates over vertex sets.

Two vertices are X-visible when some geodesic between them has no internal
vertex in X (endpoints are exempt). A set is classified under four variants
at once:

* mutual -- every pair inside X is X-visible;
* total  -- every pair of the whole vertex set is X-visible;
* outer  -- mutual, plus every X-to-complement pair;
* dual   -- mutual, plus every complement-to-complement pair.

:func:`classify_set` realizes the two-BFS verification scheme: a constrained
BFS per source in which members of X may be reached but never expanded,
compared against plain BFS distances. :class:`PairVisibility` precomputes
per-pair geodesic DAGs so search code can re-test single pairs in a few
integer operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graphs import (
    Graph,
    InvalidVertexId,
    UNREACHABLE,
    all_pairs_distances,
    as_vertex_set,
)

#: The four set variants, in the canonical reporting order.
VARIANTS = ("mutual", "total", "outer", "dual")


@dataclass(frozen=True)
class VisibilityReport:
    """Classification of one vertex set under all four variants.

    ``violations`` maps each failed variant to its lexicographically first
    non-X-visible required pair.
    """

    is_mutual: bool
    is_total: bool
    is_outer: bool
    is_dual: bool
    violations: dict[str, tuple[int, int]] = field(default_factory=dict)

    def holds(self, variant: str) -> bool:
        return getattr(self, f"is_{variant}")


def constrained_distance(g: Graph, x, source: int) -> list[int]:
    """BFS distances from ``source`` along paths internally avoiding ``x``.

    Vertices of ``x`` other than the source are assigned a level when first
    reached but are never expanded, so they can terminate a path yet cannot
    be passed through. Unreachable vertices get :data:`UNREACHABLE`.
    """
    if not 0 <= source < g.n:
        raise InvalidVertexId(f"source {source} outside [0, {g.n})")
    xmask = as_vertex_set(g, x).mask & ~(1 << source)
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du1 = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du1
                if not (xmask >> w) & 1:
                    queue.append(w)
    return dist


def is_pair_visible(g: Graph, x, u: int, v: int) -> bool:
    """True iff some u,v-geodesic has no internal vertex in ``x``."""
    if not (0 <= u < g.n) or not (0 <= v < g.n):
        raise InvalidVertexId(f"pair ({u}, {v}) outside [0, {g.n})")
    if u == v:
        return True
    d = all_pairs_distances(g)
    return constrained_distance(g, x, u)[v] == d[u][v]


def classify_set(g: Graph, x) -> VisibilityReport:
    """Classify ``x`` under all four variants, with first violating pairs.

    Runs one constrained BFS per source vertex (sources in ``x`` suffice for
    mutual/outer; dual/total need every vertex). The empty set is a set of
    every variant.
    """
    vs = as_vertex_set(g, x)
    n = g.n
    if vs.mask == 0:
        return VisibilityReport(True, True, True, True, {})
    d = all_pairs_distances(g)
    xmask = vs.mask

    # vis[u] is a bitmask over v of "u and v are x-visible".
    vis: list[int] = [0] * n
    for u in range(n):
        cd = constrained_distance(g, vs, u)
        du = d[u]
        row = 0
        for v in range(n):
            if cd[v] == du[v]:
                row |= 1 << v
        vis[u] = row

    def first_violation(required) -> tuple[int, int] | None:
        for u in range(n):
            row = vis[u]
            for v in range(u + 1, n):
                if required(u, v) and not (row >> v) & 1:
                    return (u, v)
        return None

    in_x = lambda v: (xmask >> v) & 1
    mutual_v = first_violation(lambda u, v: in_x(u) and in_x(v))
    outer_v = first_violation(lambda u, v: in_x(u) or in_x(v))
    dual_v = first_violation(lambda u, v: in_x(u) == in_x(v))
    total_v = first_violation(lambda u, v: True)

    violations = {}
    for key, pair in (
        ("mutual", mutual_v),
        ("total", total_v),
        ("outer", outer_v),
        ("dual", dual_v),
    ):
        if pair is not None:
            violations[key] = pair
    return VisibilityReport(
        is_mutual=mutual_v is None,
        is_total=total_v is None,
        is_outer=outer_v is None,
        is_dual=dual_v is None,
        violations=violations,
    )


def is_bypass_candidate(g: Graph, v: int) -> bool:
    """True iff ``v`` is never the middle vertex of a convex P3.

    A convex P3 u-v-w needs d(u,w) = 2 with v the unique common neighbor.
    Only bypass candidates can belong to a nonempty total
    mutual-visibility set.
    """
    if not 0 <= v < g.n:
        raise InvalidVertexId(f"vertex {v} outside [0, {g.n})")
    masks = g.adjacency_masks()
    nbrs = g.adj[v]
    vbit = 1 << v
    for i, u in enumerate(nbrs):
        mu = masks[u]
        for w in nbrs[i + 1:]:
            if (mu >> w) & 1:
                continue  # adjacent, d(u,w) = 1
            if mu & masks[w] == vbit:
                return False
    return True


class PairVisibility:
    """Precomputed geodesic DAGs enabling O(interval) pair re-tests.

    For each unordered pair (u, v) with u < v the interval vertices are laid
    out in BFS-layer order from u, each with a bitmask of its in-DAG
    predecessors. :meth:`visible` then answers "is the pair X-visible" for an
    arbitrary blocker bitmask with a short forward sweep, shortcut to True
    when X misses the pair's interior entirely.

    Intended for solver-scale graphs; memory grows with n^2 times the mean
    interval size.
    """

    __slots__ = (
        "n",
        "interior",
        "entries",
        "vpred",
        "abit",
        "pair_ab",
        "pair_mask",
        "pairs_through",
        "dist",
    )

    def __init__(self, g: Graph):
        n = g.n
        d = all_pairs_distances(g)
        self.n = n
        self.dist = d
        # Indexed by pid = u * n + v for u < v.
        self.interior: list[int] = [0] * (n * n)
        self.entries: list[tuple[tuple[int, int], ...]] = [()] * (n * n)
        self.vpred: list[int] = [0] * (n * n)
        self.abit: list[int] = [0] * (n * n)
        self.pair_ab: list[tuple[int, int]] = [(0, 0)] * (n * n)
        self.pair_mask: list[int] = [0] * (n * n)
        through: list[list[int]] = [[] for _ in range(n)]
        for u in range(n):
            du = d[u]
            for v in range(u + 1, n):
                pid = u * n + v
                dv = d[v]
                duv = du[v]
                members = [z for z in range(n) if du[z] + dv[z] == duv]
                members.sort(key=lambda z: du[z])
                imask = 0
                entries = []
                vpred = 0
                member_mask = 0
                for z in members:
                    member_mask |= 1 << z
                for z in members:
                    if z == u:
                        continue
                    pm = 0
                    dz = du[z]
                    for y in g.adj[z]:
                        if (member_mask >> y) & 1 and du[y] == dz - 1:
                            pm |= 1 << y
                    if z == v:
                        vpred = pm
                    else:
                        imask |= 1 << z
                        entries.append((1 << z, pm))
                        through[z].append(pid)
                self.interior[pid] = imask
                self.entries[pid] = tuple(entries)
                self.vpred[pid] = vpred
                self.abit[pid] = 1 << u
                self.pair_ab[pid] = (u, v)
                self.pair_mask[pid] = (1 << u) | (1 << v)
        self.pairs_through = [tuple(p) for p in through]

    def pid(self, u: int, v: int) -> int:
        return u * self.n + v if u < v else v * self.n + u

    def visible(self, u: int, v: int, xmask: int) -> bool:
        """True iff the (u, v) pair is X-visible for blocker mask ``xmask``."""
        return self.visible_pid(
            u * self.n + v if u < v else v * self.n + u, xmask
        )

    def visible_pid(self, pid: int, xmask: int) -> bool:
        blocked = self.interior[pid] & xmask
        if not blocked:
            return True
        reach = self.abit[pid]
        for bit, pm in self.entries[pid]:
            if pm & reach and not bit & blocked:
                reach |= bit
        return bool(self.vpred[pid] & reach)

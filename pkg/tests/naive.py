"""Independent naive oracles used to cross-check the package.

Everything here is written straight from the definitions (explicit geodesic
enumeration, full subset enumeration) and deliberately shares no code with
the solvers it checks.
"""

from __future__ import annotations

import random

from mvis import Graph, VertexSet, build_graph, classify_set
from mvis.graphs import all_pairs_distances


def all_geodesics(g: Graph, u: int, v: int) -> list[list[int]]:
    """Every shortest u,v-path, by descent along the distance gradient."""
    d = all_pairs_distances(g)
    duv = d[u][v]
    paths: list[list[int]] = []

    def extend(path: list[int]) -> None:
        z = path[-1]
        if z == v:
            paths.append(list(path))
            return
        for w in g.adj[z]:
            if d[u][w] == d[u][z] + 1 and d[u][w] + d[w][v] == duv:
                path.append(w)
                extend(path)
                path.pop()

    extend([u])
    return paths


def naive_visible(g: Graph, x, u: int, v: int) -> bool:
    members = set(x.ids() if isinstance(x, VertexSet) else x)
    return any(
        all(z in (u, v) or z not in members for z in path)
        for path in all_geodesics(g, u, v)
    )


def naive_classify(g: Graph, x) -> dict[str, bool]:
    members = set(x.ids() if isinstance(x, VertexSet) else x)
    flags = {"mutual": True, "total": True, "outer": True, "dual": True}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if naive_visible(g, x, u, v):
                continue
            u_in, v_in = u in members, v in members
            flags["total"] = False
            if u_in and v_in:
                flags["mutual"] = False
            if u_in or v_in:
                flags["outer"] = False
            if u_in == v_in:
                flags["dual"] = False
    return flags


def brute_max(g: Graph, variant: str) -> int:
    """Exhaustive 2^n maximum via the package classifier."""
    best = 0
    for mask in range(1 << g.n):
        vs = VertexSet.from_mask(g.n, mask)
        if vs.card > best and classify_set(g, vs).holds(variant):
            best = vs.card
    return best


def brute_max_witnesses(g: Graph, variant: str) -> list[tuple[int, ...]]:
    """All maximum sets for a variant, as sorted id tuples."""
    best = 0
    sets: list[tuple[int, ...]] = []
    for mask in range(1 << g.n):
        vs = VertexSet.from_mask(g.n, mask)
        if classify_set(g, vs).holds(variant):
            if vs.card > best:
                best = vs.card
                sets = [tuple(vs.ids())]
            elif vs.card == best:
                sets.append(tuple(vs.ids()))
    return sets


def random_connected_graph(n: int, rng: random.Random, p: float = 0.4) -> Graph:
    """Random connected graph: a random spanning tree plus extra edges."""
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    for i in range(1, n):
        edges.add(tuple(sorted((perm[i], perm[rng.randrange(i)]))))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return build_graph(n, sorted(edges))


def random_subset(n: int, rng: random.Random, p: float = 0.4) -> VertexSet:
    return VertexSet(n, [v for v in range(n) if rng.random() < p])

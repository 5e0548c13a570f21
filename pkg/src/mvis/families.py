"""Graph family generators and constructive witness sets.

Product graphs carry 1-based coordinate labels "(i,j)" so witness sets
quoted in coordinates can be entered verbatim; internally vertex (i,j) of an
n x m product gets id (i-1)*m + (j-1).
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field

from .graphs import (
    Graph,
    GraphError,
    VertexSet,
    build_graph,
    cartesian_product,
    read_edge_list,
)


class BadParams(GraphError):
    """Family parameters outside the valid range."""


class OutOfRange(GraphError):
    """No witness construction exists for these parameters."""


class NoWitnessKnown(GraphError):
    """The requested variant has no known witness for this family."""


class NotIndependent(GraphError):
    """The supplied base set is not independent."""


@dataclass(frozen=True)
class FamilySpec:
    """A parsed family descriptor.

    ``params`` holds the integer parameters in declaration order; random
    trees carry a ``seed`` and the reduction carries the path of its base
    graph file.
    """

    kind: str
    params: tuple[int, ...] = ()
    seed: int = 0
    base_path: str | None = None

    def canonical(self) -> str:
        if self.kind == "random_tree":
            return f"random_tree:{self.params[0]}:seed={self.seed}"
        if self.kind == "gprime":
            return f"gprime:{self.base_path}:t={self.params[0]}"
        if self.kind in ("grid", "torus", "pathprod"):
            return f"{self.kind}:" + "x".join(str(p) for p in self.params)
        return f"{self.kind}:{self.params[0]}"


_KIND_ALIASES = {
    "path": "path",
    "cycle": "cycle",
    "complete": "complete",
    "clique": "complete",
    "star": "star",
    "random_tree": "random_tree",
    "tree": "random_tree",
    "grid": "grid",
    "torus": "torus",
    "pathprod": "pathprod",
    "path_product": "pathprod",
    "gn": "gn",
    "gadget_gn": "gn",
    "ht": "ht",
    "gadget_ht": "ht",
    "gprime": "gprime",
}


def parse_family_spec(text: str) -> FamilySpec:
    """Parse canonical strings like "grid:9x6", "gn:3", "gprime:p5.el:t=3"."""
    parts = text.strip().split(":")
    kind = _KIND_ALIASES.get(parts[0].lower())
    if kind is None or len(parts) < 2:
        raise BadParams(f"cannot parse family spec {text!r}")
    try:
        if kind == "gprime":
            if len(parts) < 3 or not parts[-1].startswith("t="):
                raise BadParams(f"reduction spec needs a trailing t=, got {text!r}")
            t = int(parts[-1][2:])
            base = ":".join(parts[1:-1])
            return FamilySpec("gprime", (t,), base_path=base)
        if kind == "random_tree":
            n = int(parts[1])
            seed = 0
            if len(parts) > 2:
                if not parts[2].startswith("seed="):
                    raise BadParams(f"bad tree seed in {text!r}")
                seed = int(parts[2][5:])
            return FamilySpec("random_tree", (n,), seed=seed)
        if kind in ("grid", "torus", "pathprod"):
            dims = tuple(int(p) for p in parts[1].split("x"))
            if kind != "pathprod" and len(dims) != 2:
                raise BadParams(f"{kind} needs two dimensions, got {text!r}")
            return FamilySpec(kind, dims)
        return FamilySpec(kind, (int(parts[1]),))
    except ValueError as exc:
        raise BadParams(f"cannot parse family spec {text!r}: {exc}") from None


def _path(n: int, name: str | None = None) -> Graph:
    if n < 2:
        raise BadParams(f"path needs n >= 2, got {n}")
    return build_graph(
        n,
        [(i, i + 1) for i in range(n - 1)],
        labels=[str(i + 1) for i in range(n)],
        name=name or f"path:{n}",
    )


def _cycle(n: int, name: str | None = None) -> Graph:
    if n < 3:
        raise BadParams(f"cycle needs n >= 3, got {n}")
    return build_graph(
        n,
        [(i, (i + 1) % n) for i in range(n)],
        labels=[str(i + 1) for i in range(n)],
        name=name or f"cycle:{n}",
    )


def _complete(n: int) -> Graph:
    if n < 1:
        raise BadParams(f"complete graph needs n >= 1, got {n}")
    return build_graph(
        n,
        [(i, j) for i in range(n) for j in range(i + 1, n)],
        labels=[str(i + 1) for i in range(n)],
        name=f"complete:{n}",
    )


def _star(k: int) -> Graph:
    if k < 1:
        raise BadParams(f"star needs k >= 1 leaves, got {k}")
    return build_graph(
        k + 1,
        [(0, i) for i in range(1, k + 1)],
        labels=[str(i + 1) for i in range(k + 1)],
        name=f"star:{k}",
    )


def _random_tree(n: int, seed: int) -> Graph:
    """Uniform labeled tree from a seeded Pruefer sequence."""
    if n < 2:
        raise BadParams(f"random tree needs n >= 2, got {n}")
    name = f"random_tree:{n}:seed={seed}"
    labels = [str(i + 1) for i in range(n)]
    if n == 2:
        return build_graph(2, [(0, 1)], labels=labels, name=name)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return build_graph(n, edges, labels=labels, name=name)


def _grid(n: int, m: int) -> Graph:
    if n < 1 or m < 1 or n * m < 2:
        raise BadParams(f"grid needs at least two vertices, got {n}x{m}")
    a = _path(n) if n >= 2 else _single_vertex()
    b = _path(m) if m >= 2 else _single_vertex()
    g = cartesian_product(a, b)
    return Graph(g.n, g.adj, g.labels, f"grid:{n}x{m}")


def _single_vertex() -> Graph:
    return build_graph(1, [], labels=["1"])


def _torus(n: int, m: int) -> Graph:
    if n < 3 or m < 3:
        raise BadParams(f"torus needs n, m >= 3, got {n}x{m}")
    g = cartesian_product(_cycle(n), _cycle(m))
    return Graph(g.n, g.adj, g.labels, f"torus:{n}x{m}")


def _path_product(dims: tuple[int, ...]) -> Graph:
    if len(dims) < 1 or any(d < 2 for d in dims):
        raise BadParams(f"path product needs factors >= 2, got {dims}")
    g = _path(dims[0]) if dims[0] >= 2 else _single_vertex()
    for d in dims[1:]:
        g = cartesian_product(g, _path(d))
    name = "pathprod:" + "x".join(str(d) for d in dims)
    return Graph(g.n, g.adj, g.labels, name)


def _gadget_gn(n: int) -> Graph:
    """n five-cycles sharing the single edge uv; order 3n + 2.

    Ids: u = 0, v = 1, then per cycle i (1-based) the path
    u - x_i - z_i - y_i - v with x_i = 3i - 1, z_i = 3i, y_i = 3i + 1.
    """
    if n < 2:
        raise BadParams(f"five-cycle gadget needs n >= 2, got {n}")
    edges = [(0, 1)]
    labels = ["u", "v"]
    for i in range(1, n + 1):
        x, z, y = 3 * i - 1, 3 * i, 3 * i + 1
        edges += [(0, x), (x, z), (z, y), (y, 1)]
        labels += [f"x{i}", f"z{i}", f"y{i}"]
    return build_graph(3 * n + 2, edges, labels=labels, name=f"gn:{n}")


def gn_vertex(role: str, i: int) -> int:
    """Id of u, v, x_i, z_i, or y_i in the five-cycle gadget."""
    if role == "u":
        return 0
    if role == "v":
        return 1
    return {"x": 3 * i - 1, "z": 3 * i, "y": 3 * i + 1}[role]


def _gadget_ht(t: int) -> Graph:
    """t disjoint 4x3 grids plus an apex adjacent to each grid's (2,3).

    Copy c (0-based) occupies ids 12c .. 12c + 11 with the usual grid
    indexing; the apex has id 12t. Order 12t + 1.
    """
    if t < 2:
        raise BadParams(f"grid-chain gadget needs t >= 2, got {t}")
    grid = _grid(4, 3)
    edges = []
    labels = []
    for c in range(t):
        off = 12 * c
        edges += [(off + u, off + v) for u, v in grid.edges()]
        labels += [f"g{c + 1}:{lab}" for lab in grid.labels]
    apex = 12 * t
    labels.append("x")
    for c in range(t):
        edges.append((apex, ht_copy_vertex(c, 2, 3)))
    return build_graph(apex + 1, edges, labels=labels, name=f"ht:{t}")


def ht_copy_vertex(c: int, i: int, j: int) -> int:
    """Id of vertex (i, j) of copy ``c`` (0-based) in the grid-chain gadget."""
    return 12 * c + (i - 1) * 3 + (j - 1)


def generate(spec: FamilySpec | str) -> Graph:
    """Build the graph described by a FamilySpec or its string form."""
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    kind = spec.kind
    try:
        if kind == "path":
            return _path(spec.params[0])
        if kind == "cycle":
            return _cycle(spec.params[0])
        if kind == "complete":
            return _complete(spec.params[0])
        if kind == "star":
            return _star(spec.params[0])
        if kind == "random_tree":
            return _random_tree(spec.params[0], spec.seed)
        if kind == "grid":
            if len(spec.params) != 2:
                raise BadParams(f"grid needs two dimensions, got {spec.params}")
            return _grid(*spec.params)
        if kind == "torus":
            if len(spec.params) != 2:
                raise BadParams(f"torus needs two dimensions, got {spec.params}")
            return _torus(*spec.params)
        if kind == "pathprod":
            return _path_product(spec.params)
        if kind == "gn":
            return _gadget_gn(spec.params[0])
        if kind == "ht":
            return _gadget_ht(spec.params[0])
        if kind == "gprime":
            if spec.base_path is None:
                raise BadParams("reduction spec carries no base graph path")
            base = read_edge_list(spec.base_path)
            return reduction_gprime(base, spec.params[0]).gprime
    except IndexError:
        raise BadParams(f"missing parameters for {kind}") from None
    raise BadParams(f"unknown family kind {kind!r}")


# --------------------------------------------------------------------------
# The hardness-reduction graph G' and its canonical witness
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionRecord:
    """The reduction graph with per-vertex roles and id bookkeeping."""

    gprime: Graph
    tags: tuple[str, ...]
    base: Graph
    t: int
    edge_vertex_ids: dict[tuple[int, int], int] = field(default_factory=dict)
    apex_id: int = 0
    apex_clique_ids: tuple[int, ...] = ()
    pendant_ids: dict[tuple[int, int], tuple[int, ...]] = field(
        default_factory=dict
    )


def reduction_gprime(g: Graph, t: int) -> ReductionRecord:
    """Attach edge-vertices, an apex clique, and pendant cliques to ``g``.

    Per base edge e = ij: a vertex v_e adjacent to i and j, with all v_e
    forming a clique; a clique K_{t+1} whose distinguished vertex x is
    adjacent to all of the base; per v_e a pendant K_t fully joined to it.
    Order n + m + (t + 1) + m*t.
    """
    if t < 3:
        raise BadParams(f"reduction needs t >= 3, got {t}")
    if g.n < 2:
        raise BadParams("reduction needs a base graph with at least 2 vertices")
    n = g.n
    base_edges = g.edges()
    m = len(base_edges)

    edges: list[tuple[int, int]] = list(base_edges)
    tags: list[str] = ["original"] * n
    labels: list[str] = [
        g.labels[i] if g.labels is not None else str(i + 1) for i in range(n)
    ]

    edge_vertex_ids: dict[tuple[int, int], int] = {}
    for k, (i, j) in enumerate(base_edges):
        ve = n + k
        edge_vertex_ids[(i, j)] = ve
        tags.append("edge_vertex")
        labels.append(f"ve({i + 1},{j + 1})")
        edges += [(i, ve), (j, ve)]
    ve_ids = sorted(edge_vertex_ids.values())
    edges += [(a, b) for ai, a in enumerate(ve_ids) for b in ve_ids[ai + 1:]]

    apex = n + m
    tags.append("apex_x")
    labels.append("x")
    clique_ids = tuple(range(apex + 1, apex + 1 + t))
    for k, xid in enumerate(clique_ids):
        tags.append("apex_clique")
        labels.append(f"x{k + 1}")
    apex_members = (apex,) + clique_ids
    edges += [
        (a, b)
        for ai, a in enumerate(apex_members)
        for b in apex_members[ai + 1:]
    ]
    edges += [(apex, i) for i in range(n)]

    pendant_ids: dict[tuple[int, int], tuple[int, ...]] = {}
    next_id = apex + 1 + t
    for (i, j) in base_edges:
        ids = tuple(range(next_id, next_id + t))
        next_id += t
        pendant_ids[(i, j)] = ids
        for k, pid in enumerate(ids):
            tags.append(f"pendant_clique({i}-{j})")
            labels.append(f"e({i + 1},{j + 1})y{k + 1}")
        edges += [(a, b) for ai, a in enumerate(ids) for b in ids[ai + 1:]]
        edges += [(edge_vertex_ids[(i, j)], pid) for pid in ids]

    gp = build_graph(next_id, edges, labels=labels, name=f"gprime:t={t}")
    return ReductionRecord(
        gprime=gp,
        tags=tuple(tags),
        base=g,
        t=t,
        edge_vertex_ids=edge_vertex_ids,
        apex_id=apex,
        apex_clique_ids=clique_ids,
        pendant_ids=pendant_ids,
    )


def reduction_witness(record: ReductionRecord, independent_set) -> VertexSet:
    """The canonical total mutual-visibility set built from a base
    independent set: I plus the apex clique minus x plus every pendant
    vertex; its size is (m + 1) * t + |I|."""
    base = record.base
    ind = sorted(
        independent_set.ids()
        if isinstance(independent_set, VertexSet)
        else independent_set
    )
    for ai, a in enumerate(ind):
        for b in ind[ai + 1:]:
            if base.has_edge(a, b):
                raise NotIndependent(f"vertices {a} and {b} are adjacent")
    members = list(ind) + list(record.apex_clique_ids)
    for ids in record.pendant_ids.values():
        members.extend(ids)
    return VertexSet(record.gprime.n, members)


# --------------------------------------------------------------------------
# Witness constructions for grids, tori, and the five-cycle gadget
# --------------------------------------------------------------------------


def _grid_ids(coords, n: int, m: int) -> VertexSet:
    for (i, j) in coords:
        if not (1 <= i <= n and 1 <= j <= m):
            raise OutOfRange(f"coordinate ({i},{j}) outside {n}x{m}")
    return VertexSet(n * m, [(i - 1) * m + (j - 1) for i, j in coords])


def grid_outer_witness(n: int, m: int) -> VertexSet:
    """An outer mutual-visibility set of the n x m grid of size m + 2.

    Covers the wide regime n >= 7, m >= 6 (with its collision repairs), the
    explicit small sets for m = 3 (n >= 5) and m = 5 (n >= 7), and the
    long-thin extension where the diagonal run is capped at m - 2 entries.
    Requires n >= m.
    """
    if n < m:
        raise OutOfRange("witness construction assumes n >= m")
    if m == 3 and n >= 5:
        coords = [(1, 1), (n, 1), (3, 2), (1, 3), (n, 3)]
        return _grid_ids(coords, n, m)
    if m == 5 and n >= 7:
        coords = [(1, 1), (n, 1), (5, 2), (2, 3), (4, 4), (1, 5), (n, 5)]
        return _grid_ids(coords, n, m)
    if m < 6 or n < 7:
        raise OutOfRange(f"no outer witness construction for {n}x{m}")

    corners = [(1, 1), (n, 1), (1, m), (n, m)]
    half = (n - 2) // 2
    if half > m - 2:
        # Long thin grids: the diagonal run alone reaches the top rows.
        a_run = [(2 * k + 1, k + 1) for k in range(1, m - 1)]
        return _grid_ids(corners + a_run, n, m)
    a_run = [(2 * k + 1, k + 1) for k in range(1, half + 1)]
    b_run = [(2 * k, half + k + 1) for k in range(1, m - half - 1)]
    coords = corners + a_run + b_run
    collision = (n - 1, m - 1)
    if (a_run and a_run[-1] == collision) or (b_run and b_run[-1] == collision):
        coords = [c for c in coords if c not in ((n - 3, m - 2), (n - 1, m - 1))]
        coords += [(n - 3, m - 1), (n - 1, m - 2)]
    elif len(b_run) == 1 and b_run[0] == (2, m - 1):
        coords = [c for c in coords if c != (2, m - 1)]
        coords.append((4, m - 1))
    return _grid_ids(coords, n, m)


def grid_dual_witness(n: int, m: int) -> VertexSet:
    """A maximum dual mutual-visibility set of the n x m grid.

    The five-vertex corner-hugging set for n >= 4, m >= 3; the four corners
    for m = 2, n >= 3.
    """
    if m == 2 and n >= 3:
        return _grid_ids([(1, 1), (1, 2), (n, 1), (n, 2)], n, m)
    if n >= 4 and m >= 3:
        coords = [(1, 1), (2, 1), (n, m - 1), (n, m), (1, m)]
        return _grid_ids(coords, n, m)
    raise OutOfRange(f"no dual witness construction for {n}x{m}")


_TORUS_DUAL_WITNESS = {
    (3, 3): [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)],
    (4, 3): [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)],
    (4, 4): [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (3, 3), (3, 4), (4, 3)],
    (5, 3): [(1, 1), (2, 1)],
    (5, 4): [(1, 1), (2, 1), (4, 3), (5, 3)],
    (6, 3): [(1, 2), (2, 2), (4, 1), (5, 1)],
    (6, 4): [(1, 1), (2, 1), (4, 3), (5, 3)],
}

_TORUS_TOTAL_WITNESS = {
    (3, 3): [(1, 1), (1, 2), (1, 3)],
    (4, 3): [(1, 1), (1, 2), (1, 3)],
    (4, 4): [(1, 1), (1, 2), (3, 3), (3, 4)],
}


def torus_witnesses(n: int, m: int, variant: str) -> VertexSet:
    """Maximum dual/total witness sets for the nonzero torus cases."""
    if variant == "dual":
        table = _TORUS_DUAL_WITNESS
    elif variant == "total":
        table = _TORUS_TOTAL_WITNESS
    else:
        raise NoWitnessKnown(f"no torus witnesses for variant {variant!r}")
    coords = table.get((n, m))
    if coords is None:
        raise NoWitnessKnown(f"no nonzero {variant} witness for torus {n}x{m}")
    return _grid_ids(coords, n, m)


def gn_witnesses(n: int, variant: str) -> VertexSet:
    """Witness sets for the five-cycle gadget: 2n / n / n+1 vertices for
    mutual / outer / dual; the total number is 0, so no total witness."""
    if n < 2:
        raise OutOfRange(f"five-cycle gadget needs n >= 2, got {n}")
    cap = 3 * n + 2
    if variant == "mutual":
        ids = [gn_vertex("x", i) for i in range(1, n + 1)]
        ids += [gn_vertex("y", i) for i in range(1, n + 1)]
    elif variant == "outer":
        ids = [gn_vertex("z", i) for i in range(1, n + 1)]
    elif variant == "dual":
        ids = [gn_vertex("x", 1)] + [gn_vertex("z", i) for i in range(1, n + 1)]
    else:
        raise NoWitnessKnown("the five-cycle gadget has no nonempty total set")
    return VertexSet(cap, ids)

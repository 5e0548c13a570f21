"""Exact maximum-set solvers for the four visibility variants.

The hereditary variants (mutual, outer, total) use depth-first inclusion
search: any partial set violating the variant prunes its whole subtree, and
``|current| + |remaining| <= best`` bound-prunes the rest. The dual variant
is not hereditary, so it branches include/exclude per vertex tracking the
decided-in set I and decided-out set E; a subtree dies as soon as two
same-side decided vertices are not I-visible, a condition that is monotone
in I and therefore sound. Unit forcing derived from that same condition
(a blocked pair must end up split across I and E) is applied eagerly; it
only removes nodes whose descendants would all die anyway.

All searches run in two phases: first the exact value, then the
lexicographically least maximum witness, rebuilt greedily one vertex at a
time with decision searches.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .graphs import (
    Graph,
    GraphError,
    VertexSet,
    all_pairs_distances,
    as_vertex_set,
    graph_stats,
    induced_subgraph,
    is_convex,
)
from .visibility import PairVisibility, is_bypass_candidate

VARIANTS = ("mutual", "total", "outer", "dual")


class TooSmall(GraphError):
    """The graph is below the minimum order for this characterization."""


class IncompleteCover(GraphError):
    """The supplied parts do not cover the vertex set."""


class Incomplete(Exception):
    """A search budget was exhausted before the exact value was certified.

    ``lower_bound`` and ``witness`` describe the best set found so far; they
    are never an exact answer.
    """

    def __init__(self, variant: str, lower_bound: int, witness: VertexSet,
                 stats: "SearchStats"):
        super().__init__(
            f"budget exhausted solving {variant}: best so far {lower_bound}"
        )
        self.variant = variant
        self.lower_bound = lower_bound
        self.witness = witness
        self.stats = stats


@dataclass
class SolveOptions:
    """Search controls.

    ``node_budget`` / ``time_budget_ms`` of 0 mean unlimited. The candidate
    filter restricts the total-variant search to vertices that can belong to
    a nonempty total set at all. ``parallel`` is accepted for interface
    stability; the in-process search is sequential (instance-level
    parallelism lives in the CLI verify command), so results are trivially
    schedule-independent.
    """

    node_budget: int = 0
    time_budget_ms: int = 0
    candidate_filter: bool = True
    parallel: int = 1


@dataclass
class SearchStats:
    nodes_explored: int = 0
    prunes: int = 0
    elapsed_ms: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    variant: str
    value: int
    witness: VertexSet
    stats: SearchStats
    method: str = "search"


class _BudgetExceeded(Exception):
    pass


class _Budget:
    """Node/time budget shared across the phases of one solve call."""

    __slots__ = ("nodes", "node_budget", "deadline", "t0", "_timecheck")

    def __init__(self, opts: SolveOptions):
        self.nodes = 0
        self.node_budget = opts.node_budget
        self.t0 = time.monotonic()
        self.deadline = (
            self.t0 + opts.time_budget_ms / 1000.0
            if opts.time_budget_ms
            else 0.0
        )
        self._timecheck = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.node_budget and self.nodes > self.node_budget:
            raise _BudgetExceeded
        if self.deadline:
            self._timecheck += 1
            if self._timecheck >= 2048:
                self._timecheck = 0
                if time.monotonic() > self.deadline:
                    raise _BudgetExceeded

    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.t0) * 1000.0


def _branch_order(g: Graph, candidates: list[int]) -> list[int]:
    """Descending degree, ties by ascending vertex id."""
    return sorted(candidates, key=lambda v: (-len(g.adj[v]), v))


# --------------------------------------------------------------------------
# Hereditary variants: mutual, outer, total
# --------------------------------------------------------------------------


class _HereditarySearch:
    def __init__(self, g: Graph, variant: str, pv: PairVisibility,
                 candidates: list[int], budget: _Budget, stats: SearchStats):
        self.g = g
        self.n = g.n
        self.variant = variant
        self.pv = pv
        self.candidates = candidates
        self.order = _branch_order(g, candidates)
        self.budget = budget
        self.stats = stats
        self.best = 0
        self.best_mask = 0

    def _feasible_add(self, v: int, xm: int, xm2: int) -> bool:
        """Would X + v still satisfy the variant? Incremental re-checks only.

        Pairs whose geodesic interior misses v keep their status, so only
        pairs through v plus the newly required pairs involving v are
        tested.
        """
        pv = self.pv
        n = self.n
        visible = pv.visible_pid
        pair_mask = pv.pair_mask
        variant = self.variant
        if variant == "mutual":
            mm = xm
            base = v * n
            while mm:
                low = mm & -mm
                u = low.bit_length() - 1
                mm ^= low
                pid = u * n + v if u < v else base + u
                if not visible(pid, xm2):
                    return False
            for pid in pv.pairs_through[v]:
                pm = pair_mask[pid]
                if xm & pm == pm and not visible(pid, xm2):
                    return False
            return True
        if variant == "total":
            for pid in pv.pairs_through[v]:
                if not visible(pid, xm2):
                    return False
            return True
        # outer: v's pairs against the whole vertex set become required.
        # Pairs (v, u) with u already inside were required before and their
        # blocker set is unchanged (endpoints are exempt), so skip them.
        base = v * n
        for z in range(n):
            if z == v or (xm >> z) & 1:
                continue
            pid = z * n + v if z < v else base + z
            if not visible(pid, xm2):
                return False
        for pid in pv.pairs_through[v]:
            if xm & pair_mask[pid] and not visible(pid, xm2):
                return False
        return True

    def run_value(self) -> None:
        """Candidate-list DFS: the list holds only vertices individually
        addable to the current set, which is sound to maintain because
        addability is monotone under heredity (a vertex unaddable now can
        never become addable as the set grows)."""
        stats = self.stats
        tick = self.budget.tick
        feasible_add = self._feasible_add

        def dfs(cands: list[int], xm: int, count: int) -> None:
            tick()
            if count + len(cands) <= self.best:
                stats.prunes += 1
                return
            if not cands:
                self.best = count
                self.best_mask = xm
                return
            v = cands[0]
            rest = cands[1:]
            xm2 = xm | (1 << v)
            kept = [
                u for u in rest if feasible_add(u, xm2, xm2 | (1 << u))
            ]
            stats.prunes += len(rest) - len(kept)
            dfs(kept, xm2, count + 1)
            dfs(rest, xm, count)

        initial = [
            v for v in self.order if feasible_add(v, 0, 1 << v)
        ]
        dfs(initial, 0, 0)

    def exists_with_prefix(self, prefix_mask: int, prefix_count: int,
                           allowed: list[int], target: int) -> bool:
        """Is there a feasible set of size ``target`` extending the prefix
        using only ``allowed`` vertices?"""
        stats = self.stats
        tick = self.budget.tick
        feasible_add = self._feasible_add

        def dfs(cands: list[int], xm: int, count: int) -> bool:
            tick()
            if count == target:
                return True
            if count + len(cands) < target:
                stats.prunes += 1
                return False
            v = cands[0]
            xm2 = xm | (1 << v)
            kept = [
                u for u in cands[1:] if feasible_add(u, xm2, xm2 | (1 << u))
            ]
            if dfs(kept, xm2, count + 1):
                return True
            return dfs(cands[1:], xm, count)

        initial = [
            u for u in allowed
            if feasible_add(u, prefix_mask, prefix_mask | (1 << u))
        ]
        return dfs(initial, prefix_mask, prefix_count)

    def lex_least_witness(self, target: int) -> int:
        """Greedy lexicographically least maximum set, one decision per id."""
        if target == 0:
            return 0
        chosen = 0
        count = 0
        low = 0
        cand_set = set(self.candidates)
        while count < target:
            for v in range(low, self.n):
                if v not in cand_set or (chosen >> v) & 1:
                    continue
                cm2 = chosen | (1 << v)
                if not self._feasible_add(v, chosen, cm2):
                    continue
                allowed = [u for u in self.order if u > v and not (cm2 >> u) & 1]
                if self.exists_with_prefix(cm2, count + 1, allowed, target):
                    chosen = cm2
                    count += 1
                    low = v + 1
                    break
            else:
                raise AssertionError("lex witness reconstruction failed")
        return chosen


# --------------------------------------------------------------------------
# Dual variant
# --------------------------------------------------------------------------


class _DualSearch:
    """Include/exclude search with monotone blocked-pair forcing.

    A pair that is not I-visible can never become visible again, and a dual
    set must keep every blocked pair split across X and its complement, so
    discovering one forces or kills decisions. Same-side decided blocked
    pairs kill the node; one-sided ones force the undecided endpoint.
    """

    def __init__(self, g: Graph, pv: PairVisibility, budget: _Budget,
                 stats: SearchStats):
        self.g = g
        self.n = g.n
        self.pv = pv
        self.budget = budget
        self.stats = stats
        self.order = _branch_order(g, list(range(g.n)))
        self.best = 0
        self.best_mask = 0
        self.full = (1 << g.n) - 1

    def _apply(self, im: int, em: int, v: int,
               into: bool) -> tuple[int, int] | None:
        """Decide v (and everything it forces); None when a pair dies."""
        pv = self.pv
        n = self.n
        full = self.full
        visible = pv.visible_pid
        through = pv.pairs_through
        pair_ab = pv.pair_ab
        stack = [(v, into)]
        while stack:
            u, side = stack.pop()
            ub = 1 << u
            if side:
                if em & ub:
                    return None
                if im & ub:
                    continue
                im |= ub
                base = u * n
                mm = full & ~em & ~ub  # decided-in partners and undecided
                while mm:
                    low = mm & -mm
                    w = low.bit_length() - 1
                    mm ^= low
                    pid = w * n + u if w < u else base + w
                    if not visible(pid, im):
                        if im & low:
                            return None  # two decided-in vertices blocked
                        stack.append((w, False))
                for pid in through[u]:
                    a, b = pair_ab[pid]
                    abit = 1 << a
                    bbit = 1 << b
                    a_dec = (im | em) & abit
                    b_dec = (im | em) & bbit
                    if not a_dec:
                        if not b_dec:
                            continue  # both undecided; caught later
                        if not visible(pid, im):
                            stack.append((a, bool(em & bbit)))
                    elif not b_dec:
                        if not visible(pid, im):
                            stack.append((b, bool(em & abit)))
                    else:
                        same = (
                            (im & abit and im & bbit)
                            or (em & abit and em & bbit)
                        )
                        if same and not visible(pid, im):
                            return None
            else:
                if im & ub:
                    return None
                if em & ub:
                    continue
                em |= ub
                base = u * n
                mm = full & ~im & ~ub  # decided-out partners and undecided
                while mm:
                    low = mm & -mm
                    w = low.bit_length() - 1
                    mm ^= low
                    pid = w * n + u if w < u else base + w
                    if not visible(pid, im):
                        if em & low:
                            return None  # two decided-out vertices blocked
                        stack.append((w, True))
        return im, em

    def _full_dual_ok(self, xm: int) -> bool:
        """Leaf check: every within-X and within-complement pair visible."""
        n = self.n
        visible = self.pv.visible_pid
        cm = self.full & ~xm
        for u in range(n):
            ub = 1 << u
            side = xm if xm & ub else cm
            base = u * n
            for v in range(u + 1, n):
                if side & (1 << v) and not visible(base + v, xm):
                    return False
        return True

    def run_value(self) -> None:
        stats = self.stats
        tick = self.budget.tick
        order = self.order

        def dfs(im: int, em: int, start: int) -> None:
            tick()
            und = self.full & ~im & ~em
            icount = im.bit_count()
            if icount + und.bit_count() <= self.best:
                stats.prunes += 1
                return
            if not und:
                if self._full_dual_ok(im):
                    self.best = icount
                    self.best_mask = im
                return
            i = start
            while (1 << order[i]) & ~und:
                i += 1
            v = order[i]
            r = self._apply(im, em, v, True)
            if r is not None:
                dfs(r[0], r[1], i + 1)
            else:
                stats.prunes += 1
            r = self._apply(im, em, v, False)
            if r is not None:
                dfs(r[0], r[1], i + 1)
            else:
                stats.prunes += 1

        dfs(0, 0, 0)

    def exists_with_prefix(self, upto: int, prefix_mask: int,
                           target: int) -> bool:
        """Is there a dual set X of size ``target`` with
        X intersect [0, upto] == prefix_mask?"""
        im, em = 0, 0
        for u in range(upto + 1):
            r = self._apply(im, em, u, bool((prefix_mask >> u) & 1))
            if r is None:
                return False
            im, em = r
        if im.bit_count() > target:
            return False
        stats = self.stats
        tick = self.budget.tick
        order = self.order

        def dfs(im: int, em: int, start: int) -> bool:
            tick()
            und = self.full & ~im & ~em
            icount = im.bit_count()
            if icount > target or icount + und.bit_count() < target:
                stats.prunes += 1
                return False
            if not und:
                return icount == target and self._full_dual_ok(im)
            i = start
            while (1 << order[i]) & ~und:
                i += 1
            v = order[i]
            r = self._apply(im, em, v, True)
            if r is not None and dfs(r[0], r[1], i + 1):
                return True
            r = self._apply(im, em, v, False)
            if r is not None and dfs(r[0], r[1], i + 1):
                return True
            return False

        return dfs(im, em, 0)

    def lex_least_witness(self, target: int) -> int:
        if target == 0:
            return 0
        chosen = 0
        count = 0
        low = 0
        while count < target:
            for v in range(low, self.n):
                cm2 = chosen | (1 << v)
                if self.exists_with_prefix(v, cm2, target):
                    chosen = cm2
                    count += 1
                    low = v + 1
                    break
            else:
                raise AssertionError("lex witness reconstruction failed")
        return chosen


# --------------------------------------------------------------------------
# Public entry points
# --------------------------------------------------------------------------


def solve(g: Graph, variant: str, opts: SolveOptions | None = None) -> SolveResult:
    """Exact value and lexicographically least maximum witness.

    Raises :class:`Incomplete` with the best-so-far lower bound when the
    node or time budget runs out.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    opts = opts or SolveOptions()
    budget = _Budget(opts)
    stats = SearchStats()
    pv = PairVisibility(g)

    if variant == "dual":
        search: _DualSearch | _HereditarySearch = _DualSearch(
            g, pv, budget, stats
        )
    else:
        candidates = list(range(g.n))
        if variant == "total" and opts.candidate_filter:
            candidates = [v for v in candidates if is_bypass_candidate(g, v)]
        search = _HereditarySearch(g, variant, pv, candidates, budget, stats)

    try:
        search.run_value()
        witness_mask = search.lex_least_witness(search.best)
    except _BudgetExceeded:
        stats.nodes_explored = budget.nodes
        stats.elapsed_ms = budget.elapsed_ms()
        raise Incomplete(
            variant,
            search.best,
            VertexSet.from_mask(g.n, search.best_mask),
            stats,
        ) from None
    stats.nodes_explored = budget.nodes
    stats.elapsed_ms = budget.elapsed_ms()
    return SolveResult(
        variant=variant,
        value=search.best,
        witness=VertexSet.from_mask(g.n, witness_mask),
        stats=stats,
    )


def solve_independence(g: Graph, opts: SolveOptions | None = None) -> SolveResult:
    """Exact independence number with a lexicographically least witness."""
    opts = opts or SolveOptions()
    budget = _Budget(opts)
    stats = SearchStats()
    masks = g.adjacency_masks()
    order = _branch_order(g, list(range(g.n)))
    n = g.n

    best = 0
    best_mask = 0
    tick = budget.tick

    def dfs(i: int, xm: int, count: int, forbidden: int) -> None:
        nonlocal best, best_mask
        tick()
        if count + (n - i) <= best:
            stats.prunes += 1
            return
        if i == n:
            best = count
            best_mask = xm
            return
        v = order[i]
        vb = 1 << v
        if not forbidden & vb:
            dfs(i + 1, xm | vb, count + 1, forbidden | masks[v] | vb)
        else:
            stats.prunes += 1
        dfs(i + 1, xm, count, forbidden)

    def exists(i: int, xm: int, count: int, forbidden: int,
               allowed: list[int], target: int) -> bool:
        tick()
        if count == target:
            return True
        if count + (len(allowed) - i) < target:
            stats.prunes += 1
            return False
        v = allowed[i]
        vb = 1 << v
        if not forbidden & vb and exists(
            i + 1, xm | vb, count + 1, forbidden | masks[v] | vb,
            allowed, target,
        ):
            return True
        return exists(i + 1, xm, count, forbidden, allowed, target)

    try:
        dfs(0, 0, 0, 0)
        target = best
        chosen = 0
        count = 0
        forbidden = 0
        low = 0
        while count < target:
            for v in range(low, n):
                vb = 1 << v
                if forbidden & vb:
                    continue
                allowed = [u for u in order if u > v and not (forbidden | masks[v] | vb) & (1 << u)]
                if exists(0, chosen | vb, count + 1,
                          forbidden | masks[v] | vb, allowed, target):
                    chosen |= vb
                    forbidden |= masks[v] | vb
                    count += 1
                    low = v + 1
                    break
            else:
                raise AssertionError("lex witness reconstruction failed")
    except _BudgetExceeded:
        stats.nodes_explored = budget.nodes
        stats.elapsed_ms = budget.elapsed_ms()
        raise Incomplete(
            "independence", best, VertexSet.from_mask(n, best_mask), stats
        ) from None

    stats.nodes_explored = budget.nodes
    stats.elapsed_ms = budget.elapsed_ms()
    return SolveResult(
        variant="independence",
        value=target,
        witness=VertexSet.from_mask(n, chosen),
        stats=stats,
    )


def total_is_zero(g: Graph) -> bool:
    """Characterization shortcut: the total number is 0 exactly when every
    vertex is the middle of some convex P3 (i.e. no bypass candidates)."""
    if g.n < 2:
        raise TooSmall("characterization needs at least 2 vertices")
    return not any(is_bypass_candidate(g, v) for v in range(g.n))


def dual_zero_sufficient(g: Graph) -> str:
    """Sufficient conditions for a zero dual number.

    Returns "proven_zero" when every edge is the center of a convex P4, or
    when girth >= 7 and minimum degree >= 2. Returns "inconclusive"
    otherwise; this is NOT a claim that the dual number is nonzero (e.g.
    C5 x C5 fails both conditions yet has dual number 0).
    """
    stats = graph_stats(g)
    if stats.girth >= 7 and stats.min_degree >= 2:
        return "proven_zero"
    imask = _interval_mask_cache(g)
    if all(_edge_center_of_convex_p4(g, u, v, imask) for u, v in g.edges()):
        return "proven_zero"
    return "inconclusive"


def _edge_center_of_convex_p4(g: Graph, u: int, v: int, imask) -> bool:
    d = all_pairs_distances(g)
    for w in g.adj[u]:
        if w == v:
            continue
        dw = d[w]
        for w2 in g.adj[v]:
            if w2 == u or dw[w2] != 3:
                continue
            four = (1 << w) | (1 << u) | (1 << v) | (1 << w2)
            # convexity of the 4-set: all six intervals stay inside it
            if (
                imask(w, w2) | imask(w, v) | imask(u, w2)
                | imask(w, u) | imask(u, v) | imask(v, w2)
            ) & ~four == 0:
                return True
    return False


def _interval_mask_cache(g: Graph):
    d = all_pairs_distances(g)
    n = g.n
    cache: dict[int, int] = {}

    def imask(u: int, v: int) -> int:
        key = u * n + v if u < v else v * n + u
        m = cache.get(key)
        if m is None:
            du, dv = d[u], d[v]
            duv = du[v]
            m = 0
            for z in range(n):
                if du[z] + dv[z] == duv:
                    m |= 1 << z
            cache[key] = m
        return m

    return imask


def dual_zero_by_cover(g: Graph, cover: list, opts: SolveOptions | None = None) -> bool:
    """Certify a zero dual number by a convex cover with zero parts.

    True certifies the dual number is 0. False means this certificate
    fails (a part is non-convex or has a nonzero dual number), not that the
    dual number is positive. Raises :class:`IncompleteCover` when the parts
    do not cover every vertex.
    """
    parts = [as_vertex_set(g, p) for p in cover]
    union = 0
    for p in parts:
        union |= p.mask
    if union != (1 << g.n) - 1:
        raise IncompleteCover("cover misses some vertices")
    for p in parts:
        if not is_convex(g, p):
            return False
        sub, _ = induced_subgraph(g, p)
        if solve(sub, "dual", opts).value != 0:
            return False
    return True

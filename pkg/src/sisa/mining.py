"""Set-centric graph mining algorithms.

Every algorithm runs exclusively through WorkerContext set operations, so
each run produces a cost ledger alongside its logical output.  Outer loops
partition vertices/edges across workers deterministically (stride); listing
algorithms honor a per-worker pattern limit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .costmodel import CostLedger
from .engine import GraphHandle, SetEngine, run_workers
from .errors import UsageError
from .graph import Graph, from_edges, sample_edges

MEASURES = (
    "jaccard",
    "overlap",
    "adamic_adar",
    "resource_alloc",
    "common_neighbors",
    "total_neighbors",
)


@dataclass
class MiningResult:
    kind: str
    value: object
    ledger: CostLedger
    patterns: list | None = None
    patterns_limit_hit: bool = False
    extras: dict = field(default_factory=dict)


class _LimitReached(Exception):
    pass


def _require_oriented(h: GraphHandle) -> None:
    if h.out is None:
        raise UsageError("algorithm needs an oriented graph (run orientation first)")


# ---------------------------------------------------------------------------
# Clique mining


def triangle_count(engine: SetEngine, h: GraphHandle, workers: int = 1) -> MiningResult:
    """Sum |N+(v) n N+(w)| over all directed edges (v, w); orientation makes
    each triangle count exactly once."""
    _require_oriented(h)

    def work(ctx, verts):
        total = 0
        for v in verts:
            out_v = h.out[v]
            for w in ctx.elements(out_v):
                total += ctx.intersect_card(out_v, h.out[int(w)])
        return total

    outs, ledger = run_workers(engine, list(range(h.graph.n)), work, workers)
    return MiningResult("tc", sum(outs), ledger)


def four_clique_count(engine: SetEngine, h: GraphHandle, workers: int = 1) -> MiningResult:
    """Specialized non-recursive 4-clique kernel: narrow to the common
    out-neighbors of the first two vertices, then count a fused cardinality
    per third vertex."""
    _require_oriented(h)

    def work(ctx, verts):
        total = 0
        for v1 in verts:
            for v2 in ctx.elements(h.out[v1]):
                s1 = ctx.intersect(h.out[v1], h.out[int(v2)])
                for v3 in ctx.elements(s1):
                    total += ctx.intersect_card(s1, h.out[int(v3)])
                ctx.free(s1)
        return total

    outs, ledger = run_workers(engine, list(range(h.graph.n)), work, workers)
    return MiningResult("4cc", sum(outs), ledger)


def k_clique_count(
    engine: SetEngine,
    h: GraphHandle,
    k: int,
    workers: int = 1,
    listing: bool = False,
    limit: int | None = None,
) -> MiningResult:
    """Recursive k-clique search over the oriented graph: each level
    restricts the candidate set to out-neighbors of the vertex just added."""
    if k < 3:
        raise UsageError("k must be at least 3")
    _require_oriented(h)

    def work(ctx, verts):
        count = 0
        pats: list[tuple] = []
        hit = False

        def rec(i: int, cid: int, stack: list[int]) -> int:
            if i == k:
                c = ctx.cardinality(cid)
                if listing:
                    for x in ctx.elements(cid):
                        if limit is not None and len(pats) >= limit:
                            raise _LimitReached
                        pats.append(tuple(sorted(stack + [int(x)])))
                return c
            total = 0
            for v in ctx.elements(cid):
                nid = ctx.intersect(h.out[int(v)], cid)
                total += rec(i + 1, nid, stack + [int(v)])
                ctx.free(nid)
            return total

        try:
            for u in verts:
                count += rec(2, h.out[u], [u])
        except _LimitReached:
            hit = True
        return count, pats, hit

    outs, ledger = run_workers(engine, list(range(h.graph.n)), work, workers)
    total = sum(o[0] for o in outs)
    pats = sorted(p for o in outs for p in o[1]) if listing else None
    return MiningResult(
        "kcc", total, ledger, patterns=pats,
        patterns_limit_hit=any(o[2] for o in outs),
    )


def _list_k_cliques(engine, h, k, workers, limit=None):
    """Clique listing for k >= 2 (k = 2 lists the oriented edges)."""
    if k == 2:
        def work(ctx, verts):
            pats = []
            for u in verts:
                for w in ctx.elements(h.out[u]):
                    pats.append((u, int(w)) if u < w else (int(w), u))
            return 0, pats, False

        outs, ledger = run_workers(engine, list(range(h.graph.n)), work, workers)
        return sorted(p for o in outs for p in o[1]), ledger, False
    res = k_clique_count(engine, h, k, workers=workers, listing=True, limit=limit)
    return res.patterns, res.ledger, res.patterns_limit_hit


def k_clique_star_list(
    engine: SetEngine,
    h: GraphHandle,
    k: int,
    variant: str = "A",
    workers: int = 1,
    limit: int | None = None,
) -> MiningResult:
    """List k-clique-stars (a k-clique plus the nonempty set of vertices
    adjacent to every clique member), duplicate-free.

    Variant A intersects all member neighborhoods of each k-clique; variant
    B mines (k+1)-cliques and accumulates them onto their k-sub-cliques.
    Both produce the same star sets.
    """
    if k < 2:
        raise UsageError("k must be at least 2")
    _require_oriented(h)
    ledger = CostLedger()

    if variant.upper() == "A":
        cliques, lg, hit = _list_k_cliques(engine, h, k, workers)
        ledger = lg

        def work(ctx, part):
            stars = set()
            for vc in part:
                x = None
                for u in vc:
                    nxt = (
                        ctx.intersect(x, h.neigh[u])
                        if x is not None
                        else ctx.copy_temp(h.neigh[u])
                    )
                    if x is not None:
                        ctx.free(x)
                    x = nxt
                ext = ctx.elements(x)
                ctx.free(x)
                if len(ext):
                    stars.add(tuple(sorted(set(vc) | {int(e) for e in ext})))
            return stars

        outs, lg2 = run_workers(engine, cliques, work, workers)
        ledger = _merge(ledger, lg2)
        stars = sorted(set().union(*outs) if outs else set())
    else:
        bigger, lg, hit = _list_k_cliques(engine, h, k + 1, workers, limit=limit)
        ledger = lg

        def work(ctx, part):
            acc: dict[tuple, int] = {}
            for c in part:
                cid = ctx.new_set(list(c), h.graph.n)
                for v in c:
                    key = tuple(x for x in c if x != v)
                    if key in acc:
                        merged = ctx.union(acc[key], cid)
                        ctx.free(acc[key])
                        acc[key] = merged
                    else:
                        acc[key] = ctx.copy_temp(cid)
                ctx.free(cid)
            return {key: tuple(int(x) for x in ctx.elements(sid)) for key, sid in acc.items()}

        outs, lg2 = run_workers(engine, bigger, work, workers)
        ledger = _merge(ledger, lg2)
        merged: dict[tuple, set] = {}
        for part in outs:
            for key, members in part.items():
                merged.setdefault(key, set()).update(members)
        stars = sorted({tuple(sorted(s)) for s in merged.values()})

    return MiningResult(
        "kcs", len(stars), ledger, patterns=stars, patterns_limit_hit=hit
    )


def _merge(a: CostLedger, b: CostLedger) -> CostLedger:
    from .costmodel import ledger_merge

    return ledger_merge(a, b)


def maximal_cliques(
    engine: SetEngine,
    h: GraphHandle,
    workers: int = 1,
    limit: int | None = None,
) -> MiningResult:
    """Bron-Kerbosch with pivoting; the outer loop walks vertices in
    degeneracy order with P = later neighbors (the oriented out-set) and
    X = earlier neighbors.  The pivot maximizes |P n N(u)| over P u X."""
    _require_oriented(h)
    if h.order is None:
        raise UsageError("maximal cliques need the degeneracy order on the handle")
    aux = engine.aux_repr

    def work(ctx, verts):
        cliques: list[tuple] = []
        hit = False

        def to_aux(sid: int) -> int:
            if ctx.meta(sid).repr_kind is not aux:
                nid = ctx.convert(sid, aux)
                ctx.free(sid)
                return nid
            return sid

        def bk(r: list[int], P: int, X: int) -> None:
            if ctx.cardinality(P) == 0 and ctx.cardinality(X) == 0:
                if limit is not None and len(cliques) >= limit:
                    raise _LimitReached
                cliques.append(tuple(sorted(r)))
                return
            cand = sorted(
                set(ctx.elements(P).tolist()) | set(ctx.elements(X).tolist())
            )
            best_u, best = -1, -1
            for u in cand:
                score = ctx.intersect_card(P, h.neigh[u])
                if score > best:
                    best, best_u = score, u
            ext = ctx.difference(P, h.neigh[best_u])
            for v in ctx.elements(ext).tolist():
                P2 = to_aux(ctx.intersect(P, h.neigh[v]))
                X2 = to_aux(ctx.intersect(X, h.neigh[v]))
                bk(r + [v], P2, X2)
                ctx.free(P2)
                ctx.free(X2)
                ctx.remove_element(P, v)
                ctx.add_element(X, v)
            ctx.free(ext)

        try:
            for v in verts:
                P0 = to_aux(ctx.copy_temp(h.out[v]))
                X0 = to_aux(ctx.difference(h.neigh[v], h.out[v]))
                bk([v], P0, X0)
                ctx.free(P0)
                ctx.free(X0)
        except _LimitReached:
            hit = True
        return cliques, hit

    outs, ledger = run_workers(engine, list(range(h.graph.n)), work, workers)
    pats = sorted(p for o in outs for p in o[0])
    return MiningResult(
        "mc", len(pats), ledger, patterns=pats,
        patterns_limit_hit=any(o[1] for o in outs),
    )


# ---------------------------------------------------------------------------
# Subgraph isomorphism (VF2) and frequent subgraph mining


def subgraph_isomorphism(
    engine: SetEngine,
    h: GraphHandle,
    pattern: Graph,
    labeled: bool = False,
    workers: int = 1,
    limit: int | None = None,
    listing: bool = False,
) -> MiningResult:
    """Count ordered embeddings of `pattern` in the target with the VF2
    state recursion: frontier pairs first (smallest IDs first), lookahead
    prunes on frontier and fresh-vertex cardinalities, then label checks.

    Embeddings are induced and injective: adjacency and non-adjacency are
    both preserved, as are vertex/edge labels when `labeled` is set.
    """
    g1 = h.graph
    if pattern.n > g1.n:
        raise UsageError("pattern has more vertices than the target")
    ph = engine.load_graph(pattern)
    n1, n2 = g1.n, pattern.n

    vl1 = g1.vertex_labels
    vl2 = pattern.vertex_labels
    el1 = g1.edge_labels or {}
    el2 = pattern.edge_labels or {}

    def work(ctx, roots):
        count = 0
        maps: list[tuple] = []
        hit = False
        core1 = np.full(n1, -1, dtype=np.int64)
        core2 = np.full(n2, -1, dtype=np.int64)

        def feasible(v1: int, v2: int, M1: int, T1: int, M2: int, T2: int) -> bool:
            # structural rule: mapped pattern neighbors must be target
            # neighbors and vice versa (induced matching)
            for u2 in pattern.adj[v2]:
                t = core2[u2]
                if t >= 0 and not ctx.membership(h.neigh[v1], int(t)):
                    return False
            mapped = ctx.intersect(h.neigh[v1], M1)
            try:
                for u1 in ctx.elements(mapped):
                    p2 = core1[int(u1)]
                    if p2 >= 0 and not ctx.membership(ph.neigh[v2], int(p2)):
                        return False
            finally:
                ctx.free(mapped)
            # lookahead on frontier-adjacent counts
            if ctx.intersect_card(h.neigh[v1], T1) < ctx.intersect_card(
                ph.neigh[v2], T2
            ):
                return False
            # lookahead on fresh-vertex counts
            seen1 = ctx.union(M1, T1)
            seen2 = ctx.union(M2, T2)
            try:
                if ctx.difference_card(h.neigh[v1], seen1) < ctx.difference_card(
                    ph.neigh[v2], seen2
                ):
                    return False
            finally:
                ctx.free(seen1)
                ctx.free(seen2)
            if labeled:
                lab1 = vl1[v1] if vl1 else None
                lab2 = vl2[v2] if vl2 else None
                if lab1 != lab2:
                    return False
                for u2 in pattern.adj[v2]:
                    t = core2[u2]
                    if t < 0:
                        continue
                    e2 = el2.get((min(v2, int(u2)), max(v2, int(u2))))
                    e1 = el1.get((min(v1, int(t)), max(v1, int(t))))
                    if e1 != e2:
                        return False
            return True

        def advance(v1, v2, M1, T1, M2, T2):
            m1 = ctx.copy_temp(M1)
            ctx.add_element(m1, v1)
            grown = ctx.union(T1, h.neigh[v1])
            t1 = ctx.difference(grown, m1)
            ctx.free(grown)
            m2 = ctx.copy_temp(M2)
            ctx.add_element(m2, v2)
            grown = ctx.union(T2, ph.neigh[v2])
            t2 = ctx.difference(grown, m2)
            ctx.free(grown)
            return m1, t1, m2, t2

        def match(depth, M1, T1, M2, T2):
            nonlocal count
            if depth == n2:
                if limit is not None and count >= limit:
                    raise _LimitReached
                count += 1
                if listing:
                    maps.append(tuple(int(core2[p]) for p in range(n2)))
                return
            if ctx.cardinality(T1) > 0 and ctx.cardinality(T2) > 0:
                v2 = int(ctx.elements(T2)[0])
                cands = [int(x) for x in ctx.elements(T1)]
            else:
                v2 = next(p for p in range(n2) if core2[p] < 0)
                cands = [x for x in range(n1) if core1[x] < 0]
            if depth == 0:
                cands = [x for x in cands if x in roots]
            for v1 in cands:
                if core1[v1] >= 0:
                    continue
                if not feasible(v1, v2, M1, T1, M2, T2):
                    continue
                core1[v1] = v2
                core2[v2] = v1
                m1, t1, m2, t2 = advance(v1, v2, M1, T1, M2, T2)
                match(depth + 1, m1, t1, m2, t2)
                for sid in (m1, t1, m2, t2):
                    ctx.free(sid)
                core1[v1] = -1
                core2[v2] = -1

        M1 = ctx.new_set([], n1)
        T1 = ctx.new_set([], n1)
        M2 = ctx.new_set([], n2)
        T2 = ctx.new_set([], n2)
        try:
            match(0, M1, T1, M2, T2)
        except _LimitReached:
            hit = True
        return count, maps, hit

    def worker_fn(ctx, roots):
        return work(ctx, set(roots))

    outs, ledger = run_workers(engine, list(range(n1)), worker_fn, workers)
    total = sum(o[0] for o in outs)
    maps = sorted(m for o in outs for m in o[1]) if listing else None
    return MiningResult(
        "si", total, ledger, patterns=maps,
        patterns_limit_hit=any(o[2] for o in outs),
    )


def _canonical_pattern(n: int, edges: tuple) -> tuple:
    """Lexicographically minimal sorted edge tuple over all vertex
    permutations (patterns are tiny, exhaustive search is fine)."""
    from itertools import permutations

    best = None
    for perm in permutations(range(n)):
        remapped = tuple(
            sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges)
        )
        if best is None or remapped < best:
            best = remapped
    return (n, best if best is not None else ())


def frequent_subgraph_mining(
    engine: SetEngine,
    h: GraphHandle,
    sigma: float,
    max_size: int = 4,
    workers: int = 1,
) -> MiningResult:
    """Apriori loop: size-1 patterns are single vertices; size-k candidates
    extend a frequent (k-1)-pattern by one new vertex attached to a
    nonempty subset of its vertices (canonical-form dedup); a candidate is
    frequent when its embedding count reaches sigma * n."""
    if sigma < 0:
        raise UsageError("sigma must be nonnegative")
    g = h.graph
    ledger = CostLedger()
    levels: dict[int, list] = {1: [((1, ()), g.n)]}
    frontier: list[tuple[int, tuple]] = [(1, ())]
    cap = min(max_size, g.n)
    k = 2
    while frontier and k <= cap:
        candidates: dict[tuple, tuple] = {}
        for pn, pedges in frontier:
            for r in range(1, pn + 1):
                for subset in combinations(range(pn), r):
                    edges = tuple(sorted(pedges + tuple((s, pn) for s in subset)))
                    key = _canonical_pattern(pn + 1, edges)
                    candidates.setdefault(key, (pn + 1, edges))
        fk = []
        for key in sorted(candidates):
            pn, pedges = candidates[key]
            pattern = from_edges(pn, list(pedges))
            res = subgraph_isomorphism(engine, h, pattern, workers=workers)
            ledger = _merge(ledger, res.ledger)
            if res.value >= sigma * g.n:
                fk.append((key, res.value))
        if not fk:
            break
        levels[k] = fk
        frontier = [key for key, _ in fk]
        k += 1
    return MiningResult("fsm", levels, ledger)


# ---------------------------------------------------------------------------
# Similarity, clustering, link prediction, traversal


def _similarity(ctx, h: GraphHandle, u: int, v: int, measure: str) -> float:
    nu, nv = h.neigh[u], h.neigh[v]
    cu = ctx.cardinality(nu)
    cv = ctx.cardinality(nv)
    if measure == "total_neighbors":
        return float(ctx.union_card(nu, nv))
    inter = ctx.intersect_card(nu, nv)
    if measure == "common_neighbors":
        return float(inter)
    if measure == "jaccard":
        denom = cu + cv - inter
        return inter / denom if denom else 0.0
    if measure == "overlap":
        denom = min(cu, cv)
        return inter / denom if denom else 0.0
    if measure in ("adamic_adar", "resource_alloc"):
        common = ctx.intersect(nu, nv)
        total = 0.0
        for w in ctx.elements(common):
            dw = ctx.cardinality(h.neigh[int(w)])
            if measure == "adamic_adar":
                total += 1.0 / math.log(max(dw, 2))
            else:
                total += 1.0 / dw
        ctx.free(common)
        return total
    raise UsageError(f"unknown measure {measure!r}; choose from {MEASURES}")


def vertex_similarity(
    engine: SetEngine, h: GraphHandle, u: int, v: int, measure: str
) -> MiningResult:
    if u == v:
        raise UsageError("similarity needs two distinct vertices")
    ctx = engine.worker(0)
    score = _similarity(ctx, h, u, v, measure)
    return MiningResult("sim", score, ctx.ledger)


def jarvis_patrick(
    engine: SetEngine, h: GraphHandle, tau: int, workers: int = 1
) -> MiningResult:
    """Keep exactly the edges whose endpoints share more than tau neighbors."""
    if tau < 0:
        raise UsageError("tau must be nonnegative")
    edges = h.graph.edges()

    def work(ctx, part):
        return [
            (u, v)
            for u, v in part
            if ctx.intersect_card(h.neigh[u], h.neigh[v]) > tau
        ]

    outs, ledger = run_workers(engine, edges, work, workers)
    kept = sorted(e for o in outs for e in o)
    return MiningResult("jp", kept, ledger)


def link_prediction_eval(
    engine: SetEngine,
    h: GraphHandle,
    fraction: float,
    measure: str,
    seed: int,
    workers: int = 1,
    predict_count: int | None = None,
) -> MiningResult:
    """Remove a seeded random edge sample, score every non-edge of the
    sparse graph with the chosen similarity measure, predict the top-scoring
    pairs (ties broken lexicographically), and report how many removed
    edges were recovered."""
    g = h.graph
    edges = g.edges()
    removed = sample_edges(edges, fraction, seed)
    removed_set = set(removed)
    sparse = from_edges(g.n, [e for e in edges if e not in removed_set],
                        name=f"{g.name}_sparse")
    hs = engine.load_graph(sparse)
    sparse_edges = set(sparse.edges())
    cands = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if (u, v) not in sparse_edges
    ]

    def work(ctx, part):
        return [(_similarity(ctx, hs, u, v, measure), u, v) for u, v in part]

    outs, ledger = run_workers(engine, cands, work, workers)
    scored = [s for o in outs for s in o]
    scored.sort(key=lambda t: (-t[0], t[1], t[2]))
    top_n = predict_count if predict_count is not None else len(removed)
    predicted = [(u, v) for _, u, v in scored[:top_n]]
    eff = len(set(predicted) & removed_set)
    return MiningResult(
        "lp",
        eff,
        ledger,
        extras={"removed": removed, "predicted": predicted},
    )


def bfs(
    engine: SetEngine,
    h: GraphHandle,
    root: int,
    direction: str = "top_down",
    workers: int = 1,
) -> MiningResult:
    """Level-synchronous traversal with the unvisited set and the frontier
    as bitvectors; top-down expands the frontier's neighborhoods, bottom-up
    scans unvisited vertices for a frontier neighbor.  Unreachable vertices
    keep parent -1."""
    g = h.graph
    if not 0 <= root < g.n:
        raise UsageError(f"root {root} outside [0, {g.n})")
    if direction not in ("top_down", "bottom_up"):
        raise UsageError("direction must be top_down or bottom_up")
    ctx = engine.worker(0)
    parent = np.full(g.n, -1, dtype=np.int64)
    parent[root] = root
    unvisited = ctx.new_set(list(range(g.n)), g.n)
    ctx.remove_element(unvisited, root)
    frontier = ctx.new_set([root], g.n)
    while ctx.cardinality(frontier) > 0:
        new_frontier = ctx.new_set([], g.n)
        if direction == "top_down":
            for u in ctx.elements(frontier):
                found = ctx.intersect(h.neigh[int(u)], unvisited)
                for w in ctx.elements(found):
                    parent[int(w)] = int(u)
                    ctx.add_element(new_frontier, int(w))
                    ctx.remove_element(unvisited, int(w))
                ctx.free(found)
        else:
            for w in ctx.elements(unvisited):
                hits = ctx.intersect(h.neigh[int(w)], frontier)
                first = ctx.elements(hits)
                ctx.free(hits)
                if len(first):
                    parent[int(w)] = int(first[0])
                    ctx.add_element(new_frontier, int(w))
                    ctx.remove_element(unvisited, int(w))
        ctx.free(frontier)
        frontier = new_frontier
    return MiningResult("bfs", [int(p) for p in parent], ctx.ledger)

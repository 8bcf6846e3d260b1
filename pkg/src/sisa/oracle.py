"""Brute-force reference implementations.

Everything here enumerates subsets or injective mappings directly over
plain Python sets, independent of the set engine and its kernels.  Inputs
are capped at 12 vertices to keep the enumerations tractable.
"""
from __future__ import annotations

import math
from itertools import combinations, permutations

from .errors import OracleSizeError, UsageError
from .graph import Graph, from_edges, sample_edges

MAX_ORACLE_VERTICES = 12


def _guard(g: Graph) -> None:
    if g.n > MAX_ORACLE_VERTICES:
        raise OracleSizeError(
            f"oracle refuses graphs with more than {MAX_ORACLE_VERTICES} vertices "
            f"(got {g.n})"
        )


def _adj_sets(g: Graph) -> list[set[int]]:
    return [set(map(int, a)) for a in g.adj]


def triangle_count(g: Graph) -> int:
    _guard(g)
    adj = _adj_sets(g)
    return sum(
        1
        for a, b, c in combinations(range(g.n), 3)
        if b in adj[a] and c in adj[a] and c in adj[b]
    )


def k_clique_list(g: Graph, k: int) -> list[tuple]:
    _guard(g)
    if k < 2:
        raise UsageError("k must be at least 2")
    adj = _adj_sets(g)
    out = []
    for verts in combinations(range(g.n), k):
        if all(v in adj[u] for u, v in combinations(verts, 2)):
            out.append(verts)
    return out


def k_clique_count(g: Graph, k: int) -> int:
    return len(k_clique_list(g, k))


def four_clique_count(g: Graph) -> int:
    return k_clique_count(g, 4)


def maximal_cliques(g: Graph) -> list[tuple]:
    _guard(g)
    adj = _adj_sets(g)
    out = []
    for mask in range(1, 1 << g.n):
        verts = [v for v in range(g.n) if mask >> v & 1]
        if not all(v in adj[u] for u, v in combinations(verts, 2)):
            continue
        vs = set(verts)
        if any(vs <= adj[w] for w in range(g.n) if w not in vs):
            continue
        out.append(tuple(verts))
    return sorted(out)


def k_clique_stars(g: Graph, k: int) -> list[tuple]:
    """A star is a k-clique plus the nonempty set of vertices adjacent to
    every clique member."""
    _guard(g)
    adj = _adj_sets(g)
    stars = set()
    for verts in k_clique_list(g, k):
        vs = set(verts)
        ext = {w for w in range(g.n) if w not in vs and vs <= adj[w]}
        if ext:
            stars.add(tuple(sorted(vs | ext)))
    return sorted(stars)


def subgraph_isomorphism(target: Graph, pattern: Graph, labeled: bool = False) -> int:
    """Count induced injective embeddings by trying every injective mapping."""
    _guard(target)
    if pattern.n > target.n:
        raise UsageError("pattern has more vertices than the target")
    tadj = _adj_sets(target)
    el1 = target.edge_labels or {}
    el2 = pattern.edge_labels or {}
    count = 0
    for mapping in permutations(range(target.n), pattern.n):
        ok = True
        for i, j in combinations(range(pattern.n), 2):
            has_p = pattern.has_edge(i, j)
            has_t = mapping[j] in tadj[mapping[i]]
            if has_p != has_t:
                ok = False
                break
            if ok and labeled and has_p:
                e2 = el2.get((min(i, j), max(i, j)))
                a, b = mapping[i], mapping[j]
                e1 = el1.get((min(a, b), max(a, b)))
                if e1 != e2:
                    ok = False
                    break
        if ok and labeled and pattern.vertex_labels is not None:
            for i in range(pattern.n):
                l2 = pattern.vertex_labels[i]
                l1 = (
                    target.vertex_labels[mapping[i]]
                    if target.vertex_labels is not None
                    else None
                )
                if l1 != l2:
                    ok = False
                    break
        if ok:
            count += 1
    return count


def _canon(n: int, edges: tuple) -> tuple:
    best = None
    for perm in permutations(range(n)):
        remapped = tuple(
            sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges)
        )
        if best is None or remapped < best:
            best = remapped
    return (n, best if best is not None else ())


def frequent_subgraph_mining(g: Graph, sigma: float, max_size: int = 4) -> dict:
    """Same apriori structure as the engine (single-vertex seeds, extend a
    frequent pattern by one attached vertex, canonical dedup), with counts
    from the brute-force embedding enumerator."""
    _guard(g)
    levels: dict[int, list] = {1: [((1, ()), g.n)]}
    frontier = [(1, ())]
    cap = min(max_size, g.n)
    k = 2
    while frontier and k <= cap:
        candidates = {}
        for pn, pedges in frontier:
            for r in range(1, pn + 1):
                for subset in combinations(range(pn), r):
                    edges = tuple(sorted(pedges + tuple((s, pn) for s in subset)))
                    candidates.setdefault(_canon(pn + 1, edges), (pn + 1, edges))
        fk = []
        for key in sorted(candidates):
            pn, pedges = candidates[key]
            cnt = subgraph_isomorphism(g, from_edges(pn, list(pedges)))
            if cnt >= sigma * g.n:
                fk.append((key, cnt))
        if not fk:
            break
        levels[k] = fk
        frontier = [key for key, _ in fk]
        k += 1
    return levels


def vertex_similarity(g: Graph, u: int, v: int, measure: str) -> float:
    _guard(g)
    adj = _adj_sets(g)
    a, b = adj[u], adj[v]
    inter = a & b
    if measure == "jaccard":
        return len(inter) / len(a | b) if a | b else 0.0
    if measure == "overlap":
        denom = min(len(a), len(b))
        return len(inter) / denom if denom else 0.0
    if measure == "common_neighbors":
        return float(len(inter))
    if measure == "total_neighbors":
        return float(len(a | b))
    if measure == "adamic_adar":
        return sum(1.0 / math.log(max(len(adj[w]), 2)) for w in sorted(inter))
    if measure == "resource_alloc":
        return sum(1.0 / len(adj[w]) for w in sorted(inter))
    raise UsageError(f"unknown measure {measure!r}")


def jarvis_patrick(g: Graph, tau: int) -> list[tuple]:
    _guard(g)
    adj = _adj_sets(g)
    return sorted(
        (u, v) for u, v in g.edges() if len(adj[u] & adj[v]) > tau
    )


def link_prediction_eval(g: Graph, fraction: float, measure: str, seed: int) -> int:
    _guard(g)
    edges = g.edges()
    removed = sample_edges(edges, fraction, seed)
    removed_set = set(removed)
    sparse = from_edges(g.n, [e for e in edges if e not in removed_set])
    sparse_edges = set(sparse.edges())
    scored = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if (u, v) in sparse_edges:
                continue
            scored.append((vertex_similarity(sparse, u, v, measure), u, v))
    scored.sort(key=lambda t: (-t[0], t[1], t[2]))
    predicted = {(u, v) for _, u, v in scored[: len(removed)]}
    return len(predicted & removed_set)


def bfs_levels(g: Graph, root: int) -> list[int]:
    """Level of each vertex from the root (-1 when unreachable)."""
    _guard(g)
    level = [-1] * g.n
    level[root] = 0
    frontier = [root]
    d = 0
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if level[int(w)] < 0:
                    level[int(w)] = d + 1
                    nxt.append(int(w))
        frontier = nxt
        d += 1
    return level


def bfs_parents(g: Graph, root: int) -> list[int]:
    """Parent map where each vertex takes its smallest neighbor in the
    previous level; matches both traversal directions of the engine."""
    level = bfs_levels(g, root)
    parent = [-1] * g.n
    parent[root] = root
    for v in range(g.n):
        if v == root or level[v] < 0:
            continue
        parent[v] = min(
            int(w) for w in g.adj[v] if level[int(w)] == level[v] - 1
        )
    return parent


def degeneracy(g: Graph) -> int:
    """Definitional degeneracy: the largest minimum degree over all
    nonempty induced subgraphs."""
    _guard(g)
    adj = _adj_sets(g)
    best = 0
    for mask in range(1, 1 << g.n):
        verts = {v for v in range(g.n) if mask >> v & 1}
        min_deg = min(len(adj[v] & verts) for v in verts)
        best = max(best, min_deg)
    return best
